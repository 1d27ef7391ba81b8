// Copyright 2026 The DDR Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Operators that move, select or describe elements without arithmetic.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "kernels_common.hpp"

namespace ddr::onnx::detail {
namespace {

// Copies the elements at the given flat source indices into a new tensor.
Tensor gather_flat(const Tensor& src, Shape shape, const std::vector<std::int64_t>& index) {
  return visit(src, [&](const auto& v) {
    using T = typename std::decay_t<decltype(v)>::value_type;
    std::vector<T> r(index.size());
    for (std::size_t i = 0; i < index.size(); ++i) r[i] = v[static_cast<std::size_t>(index[i])];
    return Tensor(std::move(shape), std::move(r));
  });
}

Tensor with_shape(Tensor t, Shape shape) {
  t.reshape(std::move(shape));
  return t;
}

std::vector<Tensor> constant(const OpContext& ctx) {
  if (const Attribute* a = ctx.attr("value"); a != nullptr && a->t) return {*a->t};
  if (const Attribute* a = ctx.attr("value_float"); a != nullptr) return {Tensor::scalar(a->f)};
  if (const Attribute* a = ctx.attr("value_int"); a != nullptr) return {Tensor::scalar(a->i)};
  if (const Attribute* a = ctx.attr("value_floats"); a != nullptr) {
    return {Tensor(Shape{static_cast<std::int64_t>(a->floats.size())}, a->floats)};
  }
  if (const Attribute* a = ctx.attr("value_ints"); a != nullptr) {
    return {Tensor(Shape{static_cast<std::int64_t>(a->ints.size())}, a->ints)};
  }
  ctx.fail("Constant without a supported value attribute");
}

std::vector<Tensor> identity(const OpContext& ctx) { return {ctx.input(0)}; }

std::vector<Tensor> dropout(const OpContext& ctx) {
  const Tensor& x = ctx.input(0);
  return {x, Tensor(x.shape(), std::vector<std::uint8_t>(static_cast<std::size_t>(x.numel()), 1))};
}

std::vector<Tensor> shape_kernel(const OpContext& ctx) {
  const Shape& s = ctx.input(0).shape();
  const auto r = static_cast<std::int64_t>(s.size());
  auto clamp = [r](std::int64_t v) { return std::clamp(v < 0 ? v + r : v, std::int64_t{0}, r); };
  const std::int64_t start = clamp(ctx.attr_int("start", 0));
  const std::int64_t end = clamp(ctx.attr_int("end", r));
  std::vector<std::int64_t> dims;
  for (std::int64_t d = start; d < end; ++d) dims.push_back(s[static_cast<std::size_t>(d)]);
  const auto n = static_cast<std::int64_t>(dims.size());
  return {Tensor(Shape{n}, std::move(dims))};
}

std::vector<Tensor> size_kernel(const OpContext& ctx) {
  return {Tensor::scalar(ctx.input(0).numel())};
}

std::vector<Tensor> reshape(const OpContext& ctx) {
  const Tensor& x = ctx.input(0);
  const bool allowzero = ctx.attr_int("allowzero", 0) != 0;
  Shape target = ctx.input(1).as_ints();
  std::int64_t known = 1;
  int infer = -1;
  for (std::size_t d = 0; d < target.size(); ++d) {
    if (target[d] == 0 && !allowzero) {
      if (d >= x.rank()) ctx.fail("Reshape copies a dimension the input does not have");
      target[d] = x.shape()[d];
    }
    if (target[d] == -1) {
      if (infer >= 0) ctx.fail("Reshape with more than one inferred dimension");
      infer = static_cast<int>(d);
    } else {
      known *= target[d];
    }
  }
  if (infer >= 0) {
    if (known == 0 || x.numel() % known != 0) ctx.fail("Reshape cannot infer a dimension");
    target[static_cast<std::size_t>(infer)] = x.numel() / known;
  }
  if (numel(target) != x.numel()) {
    ctx.fail("Reshape from " + shape_string(x.shape()) + " to " + shape_string(target));
  }
  return {with_shape(x, target)};
}

std::vector<Tensor> flatten(const OpContext& ctx) {
  const Tensor& x = ctx.input(0);
  std::int64_t axis = ctx.attr_int("axis", 1);
  if (axis < 0) axis += static_cast<std::int64_t>(x.rank());
  if (axis < 0 || axis > static_cast<std::int64_t>(x.rank())) ctx.fail("Flatten axis out of range");
  std::int64_t outer = 1;
  for (std::int64_t d = 0; d < axis; ++d) outer *= x.shape()[static_cast<std::size_t>(d)];
  return {with_shape(x, Shape{outer, outer == 0 ? 0 : x.numel() / outer})};
}

std::vector<Tensor> transpose(const OpContext& ctx) {
  const Tensor& x = ctx.input(0);
  const std::size_t rank = x.rank();
  std::vector<std::int64_t> perm = ctx.attr_ints("perm");
  if (perm.empty()) {
    perm.resize(rank);
    std::iota(perm.rbegin(), perm.rend(), 0);
  }
  if (perm.size() != rank) ctx.fail("Transpose permutation has the wrong length");
  std::vector<bool> seen(rank, false);
  Shape out(rank);
  const auto in_strides = strides_of(x.shape());
  Shape permuted_strides(rank);
  for (std::size_t d = 0; d < rank; ++d) {
    const auto p = static_cast<std::size_t>(normalize_axis(ctx, perm[d], rank));
    if (seen[p]) ctx.fail("Transpose permutation repeats an axis");
    seen[p] = true;
    out[d] = x.shape()[p];
    permuted_strides[d] = in_strides[p];
  }
  std::vector<std::int64_t> index(static_cast<std::size_t>(x.numel()));
  std::vector<std::int64_t> counter(rank, 0);
  std::int64_t off = 0;
  for (std::size_t i = 0; i < index.size(); ++i) {
    index[i] = off;
    for (std::size_t d = rank; d-- > 0;) {
      ++counter[d];
      off += permuted_strides[d];
      if (counter[d] < out[d]) break;
      off -= permuted_strides[d] * out[d];
      counter[d] = 0;
    }
  }
  return {gather_flat(x, out, index)};
}

std::vector<Tensor> squeeze(const OpContext& ctx) {
  const Tensor& x = ctx.input(0);
  const auto axes = axes_argument(ctx, 1);
  std::vector<bool> drop(x.rank(), false);
  if (axes.empty()) {
    for (std::size_t d = 0; d < x.rank(); ++d) drop[d] = x.shape()[d] == 1;
  }
  for (auto a : axes) {
    const auto d = static_cast<std::size_t>(normalize_axis(ctx, a, x.rank()));
    if (x.shape()[d] != 1) ctx.fail("Squeeze on an axis of size " + std::to_string(x.shape()[d]));
    drop[d] = true;
  }
  Shape out;
  for (std::size_t d = 0; d < x.rank(); ++d) {
    if (!drop[d]) out.push_back(x.shape()[d]);
  }
  return {with_shape(x, out)};
}

std::vector<Tensor> unsqueeze(const OpContext& ctx) {
  const Tensor& x = ctx.input(0);
  const auto axes = axes_argument(ctx, 1);
  const std::size_t rank = x.rank() + axes.size();
  std::vector<bool> inserted(rank, false);
  for (auto a : axes) {
    const auto d = static_cast<std::size_t>(normalize_axis(ctx, a, rank));
    if (inserted[d]) ctx.fail("Unsqueeze repeats an axis");
    inserted[d] = true;
  }
  Shape out;
  std::size_t src = 0;
  for (std::size_t d = 0; d < rank; ++d) out.push_back(inserted[d] ? 1 : x.shape()[src++]);
  return {with_shape(x, out)};
}

std::vector<Tensor> concat(const OpContext& ctx) {
  const Tensor& first = ctx.input(0);
  const std::int64_t axis = normalize_axis(ctx, ctx.attr_int("axis", 0), first.rank());
  const auto ax = static_cast<std::size_t>(axis);
  Shape out = first.shape();
  out[ax] = 0;
  for (std::size_t i = 0; i < ctx.num_inputs(); ++i) {
    const Tensor& t = ctx.input(i);
    if (t.dtype() != first.dtype() || t.rank() != first.rank()) {
      ctx.fail("Concat inputs differ in type or rank");
    }
    for (std::size_t d = 0; d < t.rank(); ++d) {
      if (d != ax && t.shape()[d] != first.shape()[d]) ctx.fail("Concat inputs differ in shape");
    }
    out[ax] += t.shape()[ax];
  }
  std::int64_t outer = 1;
  for (std::size_t d = 0; d < ax; ++d) outer *= out[d];
  return {visit(first, [&](const auto& proto) {
    using T = typename std::decay_t<decltype(proto)>::value_type;
    std::vector<T> r;
    r.reserve(static_cast<std::size_t>(numel(out)));
    for (std::int64_t o = 0; o < outer; ++o) {
      for (std::size_t i = 0; i < ctx.num_inputs(); ++i) {
        const Tensor& t = ctx.input(i);
        const auto& v = t.data<T>();
        const std::int64_t block = outer == 0 ? 0 : t.numel() / outer;
        r.insert(r.end(), v.begin() + o * block, v.begin() + (o + 1) * block);
      }
    }
    return Tensor(out, std::move(r));
  })};
}

std::vector<Tensor> split(const OpContext& ctx) {
  const Tensor& x = ctx.input(0);
  const auto ax = static_cast<std::size_t>(normalize_axis(ctx, ctx.attr_int("axis", 0), x.rank()));
  std::vector<std::int64_t> sizes =
      ctx.has_input(1) ? ctx.input(1).as_ints() : ctx.attr_ints("split");
  const std::size_t n_out = ctx.node().outputs.size();
  const std::int64_t dim = x.shape()[ax];
  if (sizes.empty()) {
    const auto parts = static_cast<std::int64_t>(n_out);
    const std::int64_t chunk = (dim + parts - 1) / parts;
    for (std::int64_t k = 0; k < parts; ++k) {
      sizes.push_back(std::min(chunk, std::max<std::int64_t>(0, dim - k * chunk)));
    }
  }
  if (std::accumulate(sizes.begin(), sizes.end(), std::int64_t{0}) != dim) {
    ctx.fail("Split sizes do not add up to the axis length");
  }
  std::int64_t outer = 1, inner = 1;
  for (std::size_t d = 0; d < ax; ++d) outer *= x.shape()[d];
  for (std::size_t d = ax + 1; d < x.rank(); ++d) inner *= x.shape()[d];
  std::vector<Tensor> outs;
  std::int64_t begin = 0;
  for (auto len : sizes) {
    Shape s = x.shape();
    s[ax] = len;
    std::vector<std::int64_t> index;
    index.reserve(static_cast<std::size_t>(numel(s)));
    for (std::int64_t o = 0; o < outer; ++o) {
      for (std::int64_t j = 0; j < len * inner; ++j) index.push_back((o * dim + begin) * inner + j);
    }
    outs.push_back(gather_flat(x, s, index));
    begin += len;
  }
  return outs;
}

std::vector<Tensor> slice(const OpContext& ctx) {
  const Tensor& x = ctx.input(0);
  std::vector<std::int64_t> starts, ends, axes, steps;
  if (ctx.opset() < 10) {
    starts = ctx.attr_ints("starts");
    ends = ctx.attr_ints("ends");
    axes = ctx.attr_ints("axes");
  } else {
    starts = ctx.input(1).as_ints();
    ends = ctx.input(2).as_ints();
    if (ctx.has_input(3)) axes = ctx.input(3).as_ints();
    if (ctx.has_input(4)) steps = ctx.input(4).as_ints();
  }
  if (ends.size() != starts.size()) ctx.fail("Slice starts and ends differ in length");
  if (axes.empty()) {
    axes.resize(starts.size());
    std::iota(axes.begin(), axes.end(), 0);
  }
  if (steps.empty()) steps.assign(starts.size(), 1);
  if (axes.size() != starts.size() || steps.size() != starts.size()) {
    ctx.fail("Slice argument lengths differ");
  }

  const std::size_t rank = x.rank();
  std::vector<std::int64_t> first(rank, 0), step(rank, 1);
  Shape out = x.shape();
  for (std::size_t i = 0; i < starts.size(); ++i) {
    const auto d = static_cast<std::size_t>(normalize_axis(ctx, axes[i], rank));
    const std::int64_t dim = x.shape()[d];
    const std::int64_t st = steps[i];
    if (st == 0) ctx.fail("Slice step of zero");
    auto fix = [dim](std::int64_t v) { return v < 0 ? v + dim : v; };
    std::int64_t b = fix(starts[i]);
    std::int64_t e = fix(ends[i]);
    if (st > 0) {
      b = std::clamp<std::int64_t>(b, 0, dim);
      e = std::clamp<std::int64_t>(e, 0, dim);
      out[d] = e > b ? (e - b + st - 1) / st : 0;
    } else {
      b = std::clamp<std::int64_t>(b, 0, dim - 1);
      e = std::clamp<std::int64_t>(e, -1, dim - 1);
      out[d] = b > e ? (b - e - st - 1) / (-st) : 0;
    }
    first[d] = b;
    step[d] = st;
  }
  const auto in_strides = strides_of(x.shape());
  std::vector<std::int64_t> index(static_cast<std::size_t>(numel(out)));
  std::vector<std::int64_t> counter(rank, 0);
  for (std::size_t i = 0; i < index.size(); ++i) {
    std::int64_t off = 0;
    for (std::size_t d = 0; d < rank; ++d) off += (first[d] + counter[d] * step[d]) * in_strides[d];
    index[i] = off;
    for (std::size_t d = rank; d-- > 0;) {
      if (++counter[d] < out[d]) break;
      counter[d] = 0;
    }
  }
  return {gather_flat(x, out, index)};
}

std::vector<Tensor> gather(const OpContext& ctx) {
  const Tensor& x = ctx.input(0);
  const Tensor& idx = ctx.input(1);
  if (idx.dtype() != DType::i64) ctx.fail("Gather indices must be int64");
  const auto ax = static_cast<std::size_t>(normalize_axis(ctx, ctx.attr_int("axis", 0), x.rank()));
  const std::int64_t dim = x.shape()[ax];
  std::int64_t outer = 1, inner = 1;
  for (std::size_t d = 0; d < ax; ++d) outer *= x.shape()[d];
  for (std::size_t d = ax + 1; d < x.rank(); ++d) inner *= x.shape()[d];

  Shape out(x.shape().begin(), x.shape().begin() + static_cast<std::ptrdiff_t>(ax));
  out.insert(out.end(), idx.shape().begin(), idx.shape().end());
  out.insert(out.end(), x.shape().begin() + static_cast<std::ptrdiff_t>(ax) + 1, x.shape().end());

  const auto& ind = idx.data<std::int64_t>();
  std::vector<std::int64_t> index;
  index.reserve(static_cast<std::size_t>(numel(out)));
  for (std::int64_t o = 0; o < outer; ++o) {
    for (std::int64_t k : ind) {
      if (k < -dim || k >= dim) ctx.fail("Gather index " + std::to_string(k) + " out of range");
      if (k < 0) k += dim;
      const std::int64_t base = (o * dim + k) * inner;
      for (std::int64_t j = 0; j < inner; ++j) index.push_back(base + j);
    }
  }
  return {gather_flat(x, out, index)};
}

std::vector<Tensor> gather_elements(const OpContext& ctx) {
  const Tensor& x = ctx.input(0);
  const Tensor& idx = ctx.input(1);
  if (idx.dtype() != DType::i64) ctx.fail("GatherElements indices must be int64");
  if (idx.rank() != x.rank()) ctx.fail("GatherElements rank mismatch");
  const auto ax = static_cast<std::size_t>(normalize_axis(ctx, ctx.attr_int("axis", 0), x.rank()));
  const auto in_strides = strides_of(x.shape());
  const auto& ind = idx.data<std::int64_t>();
  std::vector<std::int64_t> index(ind.size());
  std::vector<std::int64_t> counter(x.rank(), 0);
  for (std::size_t i = 0; i < ind.size(); ++i) {
    std::int64_t k = ind[i];
    const std::int64_t dim = x.shape()[ax];
    if (k < -dim || k >= dim) ctx.fail("GatherElements index out of range");
    if (k < 0) k += dim;
    std::int64_t off = 0;
    for (std::size_t d = 0; d < x.rank(); ++d) off += (d == ax ? k : counter[d]) * in_strides[d];
    index[i] = off;
    for (std::size_t d = x.rank(); d-- > 0;) {
      if (++counter[d] < idx.shape()[d]) break;
      counter[d] = 0;
    }
  }
  return {gather_flat(x, idx.shape(), index)};
}

std::vector<Tensor> expand(const OpContext& ctx) {
  const Tensor& x = ctx.input(0);
  const Shape target = ctx.input(1).as_ints();
  const Shape out = broadcast_shapes(ctx, {&x.shape(), &target});
  std::vector<std::int64_t> index(static_cast<std::size_t>(numel(out)));
  broadcast_for_each<1>(out, {&x.shape()}, [&](std::int64_t i, const auto& off) {
    index[static_cast<std::size_t>(i)] = off[0];
  });
  return {gather_flat(x, out, index)};
}

std::vector<Tensor> tile(const OpContext& ctx) {
  const Tensor& x = ctx.input(0);
  const auto reps = ctx.input(1).as_ints();
  if (reps.size() != x.rank()) ctx.fail("Tile repeats length differs from rank");
  Shape out(x.rank());
  for (std::size_t d = 0; d < x.rank(); ++d) out[d] = x.shape()[d] * reps[d];
  const auto in_strides = strides_of(x.shape());
  std::vector<std::int64_t> index(static_cast<std::size_t>(numel(out)));
  std::vector<std::int64_t> counter(x.rank(), 0);
  for (std::size_t i = 0; i < index.size(); ++i) {
    std::int64_t off = 0;
    for (std::size_t d = 0; d < x.rank(); ++d) off += (counter[d] % x.shape()[d]) * in_strides[d];
    index[i] = off;
    for (std::size_t d = x.rank(); d-- > 0;) {
      if (++counter[d] < out[d]) break;
      counter[d] = 0;
    }
  }
  return {gather_flat(x, out, index)};
}

std::vector<Tensor> constant_of_shape(const OpContext& ctx) {
  const Shape shape = ctx.input(0).as_ints();
  const auto n = static_cast<std::size_t>(numel(shape));
  const Attribute* a = ctx.attr("value");
  if (a == nullptr || !a->t) return {Tensor(shape, std::vector<float>(n, 0.0f))};
  const Tensor& v = *a->t;
  if (v.numel() != 1) ctx.fail("ConstantOfShape value must hold one element");
  return {visit(v, [&](const auto& src) {
    using T = typename std::decay_t<decltype(src)>::value_type;
    return Tensor(shape, std::vector<T>(n, src[0]));
  })};
}

std::vector<Tensor> range(const OpContext& ctx) {
  const Tensor& start = ctx.input(0);
  const Tensor& limit = ctx.input(1);
  const Tensor& delta = ctx.input(2);
  const double s = start.scalar_value(), l = limit.scalar_value(), d = delta.scalar_value();
  if (d == 0.0) ctx.fail("Range with zero delta");
  const auto n = static_cast<std::int64_t>(std::max(0.0, std::ceil((l - s) / d)));
  if (start.dtype() == DType::i64) {
    const std::int64_t is = start.data<std::int64_t>()[0];
    const std::int64_t id = delta.data<std::int64_t>()[0];
    std::vector<std::int64_t> r(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = is + i * id;
    return {Tensor(Shape{n}, std::move(r))};
  }
  const float fs = start.data<float>()[0];
  const float fd = delta.data<float>()[0];
  std::vector<float> r(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    r[static_cast<std::size_t>(i)] = fs + static_cast<float>(i) * fd;
  }
  return {Tensor(Shape{n}, std::move(r))};
}

std::vector<Tensor> trilu(const OpContext& ctx) {
  const Tensor& x = ctx.input(0);
  if (x.rank() < 2) ctx.fail("Trilu needs at least two dimensions");
  const bool upper = ctx.attr_int("upper", 1) != 0;
  const std::int64_t k = ctx.has_input(1) ? ctx.input(1).as_ints().at(0) : 0;
  const std::int64_t rows = x.shape()[x.rank() - 2];
  const std::int64_t cols = x.shape()[x.rank() - 1];
  Tensor out = x;
  visit(out, [&](auto& v) {
    using T = typename std::decay_t<decltype(v)>::value_type;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto flat = static_cast<std::int64_t>(i);
      const std::int64_t c = flat % cols;
      const std::int64_t r = (flat / cols) % rows;
      const bool keep = upper ? c - r >= k : c - r <= k;
      if (!keep) v[i] = T{};
    }
  });
  return {std::move(out)};
}

}  // namespace

void register_shape_kernels(KernelTable& t) {
  t["Constant"] = constant;
  t["Identity"] = identity;
  t["Dropout"] = dropout;
  t["Shape"] = shape_kernel;
  t["Size"] = size_kernel;
  t["Reshape"] = reshape;
  t["Flatten"] = flatten;
  t["Transpose"] = transpose;
  t["Squeeze"] = squeeze;
  t["Unsqueeze"] = unsqueeze;
  t["Concat"] = concat;
  t["Split"] = split;
  t["Slice"] = slice;
  t["Gather"] = gather;
  t["GatherElements"] = gather_elements;
  t["Expand"] = expand;
  t["Tile"] = tile;
  t["ConstantOfShape"] = constant_of_shape;
  t["Range"] = range;
  t["Trilu"] = trilu;
}

}  // namespace ddr::onnx::detail
