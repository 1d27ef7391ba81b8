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

// Matrix products, convolution, normalization and reductions.

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <limits>

#include "kernels_common.hpp"

namespace ddr::onnx::detail {
namespace {

using RowMatrix = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMatrix>;
using MutMap = Eigen::Map<RowMatrix>;

const std::vector<float>& floats(const OpContext& ctx, std::size_t i) {
  const Tensor& t = ctx.input(i);
  if (t.dtype() != DType::f32) ctx.fail("input " + std::to_string(i) + " must be float");
  return t.data<float>();
}

std::vector<Tensor> matmul(const OpContext& ctx) {
  const Tensor& a = ctx.input(0);
  const Tensor& b = ctx.input(1);
  const auto& da = floats(ctx, 0);
  const auto& db = floats(ctx, 1);
  if (a.rank() == 0 || b.rank() == 0) ctx.fail("MatMul operands must not be scalars");

  // Promote 1-D operands the numpy way and drop the inserted axis afterwards.
  Shape sa = a.shape();
  Shape sb = b.shape();
  const bool a_vec = sa.size() == 1;
  const bool b_vec = sb.size() == 1;
  if (a_vec) sa.insert(sa.begin(), 1);
  if (b_vec) sb.push_back(1);

  const std::int64_t m = sa[sa.size() - 2];
  const std::int64_t k = sa.back();
  const std::int64_t n = sb.back();
  if (sb[sb.size() - 2] != k) ctx.fail("MatMul inner dimensions differ");

  const Shape batch_a(sa.begin(), sa.end() - 2);
  const Shape batch_b(sb.begin(), sb.end() - 2);
  const Shape batch = broadcast_shapes(ctx, {&batch_a, &batch_b});

  std::vector<float> out(static_cast<std::size_t>(numel(batch) * m * n));
  broadcast_for_each<2>(batch, {&batch_a, &batch_b}, [&](std::int64_t i, const auto& off) {
    ConstMap ma(da.data() + off[0] * m * k, m, k);
    ConstMap mb(db.data() + off[1] * k * n, k, n);
    MutMap mo(out.data() + i * m * n, m, n);
    mo.noalias() = ma * mb;
  });

  Shape shape = batch;
  if (!a_vec) shape.push_back(m);
  if (!b_vec) shape.push_back(n);
  return {Tensor(shape, std::move(out))};
}

std::vector<Tensor> gemm(const OpContext& ctx) {
  const Tensor& a = ctx.input(0);
  const Tensor& b = ctx.input(1);
  if (a.rank() != 2 || b.rank() != 2) ctx.fail("Gemm expects matrices");
  const bool ta = ctx.attr_int("transA", 0) != 0;
  const bool tb = ctx.attr_int("transB", 0) != 0;
  const float alpha = ctx.attr_float("alpha", 1.0f);
  const float beta = ctx.attr_float("beta", 1.0f);

  ConstMap ma(floats(ctx, 0).data(), a.shape()[0], a.shape()[1]);
  ConstMap mb(floats(ctx, 1).data(), b.shape()[0], b.shape()[1]);
  RowMatrix prod;
  if (ta && tb) {
    prod.noalias() = ma.transpose() * mb.transpose();
  } else if (ta) {
    prod.noalias() = ma.transpose() * mb;
  } else if (tb) {
    prod.noalias() = ma * mb.transpose();
  } else {
    prod.noalias() = ma * mb;
  }
  if (alpha != 1.0f) prod *= alpha;
  const Shape shape{prod.rows(), prod.cols()};
  std::vector<float> out(prod.data(), prod.data() + prod.size());

  if (ctx.has_input(2) && beta != 0.0f) {
    const Tensor& c = ctx.input(2);
    const auto& dc = floats(ctx, 2);
    if (broadcast_shapes(ctx, {&shape, &c.shape()}) != shape) {
      ctx.fail("Gemm bias does not broadcast to the output");
    }
    broadcast_for_each<2>(shape, {&shape, &c.shape()}, [&](std::int64_t i, const auto& off) {
      out[static_cast<std::size_t>(i)] += beta * dc[static_cast<std::size_t>(off[1])];
    });
  }
  return {Tensor(shape, std::move(out))};
}

// 2-D convolution lowered to one matrix product per group.
std::vector<Tensor> conv(const OpContext& ctx) {
  const Tensor& x = ctx.input(0);
  const Tensor& w = ctx.input(1);
  if (x.rank() != 4 || w.rank() != 4) ctx.fail("only 2-D convolution is supported");
  const auto& dx = floats(ctx, 0);
  const auto& dw = floats(ctx, 1);

  const std::int64_t batch = x.shape()[0], cin = x.shape()[1];
  const std::int64_t ih = x.shape()[2], iw = x.shape()[3];
  const std::int64_t cout = w.shape()[0], kc = w.shape()[1];
  const std::int64_t kh = w.shape()[2], kw = w.shape()[3];
  const std::int64_t group = ctx.attr_int("group", 1);
  if (group <= 0 || cin != kc * group || cout % group != 0) {
    ctx.fail("channel counts do not match the group setting");
  }

  const auto strides = ctx.attr_ints("strides", {1, 1});
  const auto dilations = ctx.attr_ints("dilations", {1, 1});
  auto pads = ctx.attr_ints("pads", {0, 0, 0, 0});
  if (strides.size() != 2 || dilations.size() != 2 || pads.size() != 4) {
    ctx.fail("malformed strides, dilations or pads");
  }
  const std::string auto_pad = ctx.attr_string("auto_pad", "NOTSET");
  const std::int64_t ekh = (kh - 1) * dilations[0] + 1;
  const std::int64_t ekw = (kw - 1) * dilations[1] + 1;
  if (auto_pad == "SAME_UPPER" || auto_pad == "SAME_LOWER") {
    const std::int64_t in_dims[2] = {ih, iw};
    const std::int64_t ek[2] = {ekh, ekw};
    for (int d = 0; d < 2; ++d) {
      const std::int64_t o = (in_dims[d] + strides[d] - 1) / strides[d];
      const std::int64_t total = std::max<std::int64_t>(0, (o - 1) * strides[d] + ek[d] - in_dims[d]);
      const std::int64_t small = total / 2;
      pads[d] = auto_pad == "SAME_UPPER" ? small : total - small;
      pads[d + 2] = total - pads[d];
    }
  } else if (auto_pad == "VALID") {
    std::fill(pads.begin(), pads.end(), 0);
  } else if (auto_pad != "NOTSET") {
    ctx.fail("unknown auto_pad " + auto_pad);
  }

  const std::int64_t oh = (ih + pads[0] + pads[2] - ekh) / strides[0] + 1;
  const std::int64_t ow = (iw + pads[1] + pads[3] - ekw) / strides[1] + 1;
  if (oh <= 0 || ow <= 0) ctx.fail("convolution output would be empty");

  const float* bias = nullptr;
  if (ctx.has_input(2)) {
    if (ctx.input(2).numel() != cout) ctx.fail("bias length differs from output channels");
    bias = floats(ctx, 2).data();
  }

  const std::int64_t cols = oh * ow;
  const std::int64_t patch = kc * kh * kw;
  const std::int64_t og = cout / group;
  RowMatrix col(patch, cols);
  std::vector<float> out(static_cast<std::size_t>(batch * cout * cols));

  for (std::int64_t b = 0; b < batch; ++b) {
    for (std::int64_t g = 0; g < group; ++g) {
      for (std::int64_t c = 0; c < kc; ++c) {
        const float* plane = dx.data() + ((b * cin) + g * kc + c) * ih * iw;
        for (std::int64_t ky = 0; ky < kh; ++ky) {
          for (std::int64_t kx = 0; kx < kw; ++kx) {
            float* row = col.data() + ((c * kh + ky) * kw + kx) * cols;
            for (std::int64_t oy = 0; oy < oh; ++oy) {
              const std::int64_t y = oy * strides[0] - pads[0] + ky * dilations[0];
              for (std::int64_t ox = 0; ox < ow; ++ox) {
                const std::int64_t xx = ox * strides[1] - pads[1] + kx * dilations[1];
                row[oy * ow + ox] =
                    (y >= 0 && y < ih && xx >= 0 && xx < iw) ? plane[y * iw + xx] : 0.0f;
              }
            }
          }
        }
      }
      ConstMap wm(dw.data() + g * og * patch, og, patch);
      MutMap om(out.data() + (b * cout + g * og) * cols, og, cols);
      om.noalias() = wm * col;
      if (bias != nullptr) {
        for (std::int64_t o = 0; o < og; ++o) om.row(o).array() += bias[g * og + o];
      }
    }
  }
  return {Tensor(Shape{batch, cout, oh, ow}, std::move(out))};
}

// Applies f(ptr, n, stride) to each 1-D lane along `axis`.
template <class F>
void for_each_lane(const Shape& shape, std::int64_t axis, F f) {
  std::int64_t outer = 1, inner = 1;
  for (std::int64_t d = 0; d < axis; ++d) outer *= shape[static_cast<std::size_t>(d)];
  for (std::size_t d = static_cast<std::size_t>(axis) + 1; d < shape.size(); ++d) inner *= shape[d];
  const std::int64_t n = shape[static_cast<std::size_t>(axis)];
  for (std::int64_t o = 0; o < outer; ++o) {
    for (std::int64_t i = 0; i < inner; ++i) f(o * n * inner + i, n, inner);
  }
}

void softmax_lane(std::vector<float>& v, std::int64_t base, std::int64_t n, std::int64_t stride,
                  bool log) {
  float mx = -std::numeric_limits<float>::infinity();
  for (std::int64_t j = 0; j < n; ++j) mx = std::max(mx, v[base + j * stride]);
  double sum = 0.0;
  for (std::int64_t j = 0; j < n; ++j) {
    float& e = v[base + j * stride];
    e = std::exp(e - mx);
    sum += e;
  }
  for (std::int64_t j = 0; j < n; ++j) {
    float& e = v[base + j * stride];
    e = log ? static_cast<float>(std::log(e / sum)) : static_cast<float>(e / sum);
  }
}

std::vector<Tensor> softmax_impl(const OpContext& ctx, bool log) {
  const Tensor& x = ctx.input(0);
  std::vector<float> v = floats(ctx, 0);
  if (x.rank() == 0) ctx.fail("softmax of a scalar");
  if (ctx.opset() >= 13) {
    const std::int64_t axis = normalize_axis(ctx, ctx.attr_int("axis", -1), x.rank());
    for_each_lane(x.shape(), axis, [&](std::int64_t base, std::int64_t n, std::int64_t stride) {
      softmax_lane(v, base, n, stride, log);
    });
  } else {
    // Older opsets flatten to [outer, inner] around the axis.
    const std::int64_t axis = normalize_axis(ctx, ctx.attr_int("axis", 1), x.rank());
    std::int64_t inner = 1;
    for (std::size_t d = static_cast<std::size_t>(axis); d < x.rank(); ++d) inner *= x.shape()[d];
    for (std::int64_t base = 0; base < x.numel(); base += inner) {
      softmax_lane(v, base, inner, 1, log);
    }
  }
  return {Tensor(x.shape(), std::move(v))};
}

std::vector<Tensor> softmax(const OpContext& ctx) { return softmax_impl(ctx, false); }
std::vector<Tensor> log_softmax(const OpContext& ctx) { return softmax_impl(ctx, true); }

std::vector<Tensor> layer_norm(const OpContext& ctx) {
  const Tensor& x = ctx.input(0);
  const auto& dx = floats(ctx, 0);
  const std::int64_t axis = normalize_axis(ctx, ctx.attr_int("axis", -1), x.rank());
  const float eps = ctx.attr_float("epsilon", 1e-5f);

  std::int64_t outer = 1, inner = 1;
  for (std::int64_t d = 0; d < axis; ++d) outer *= x.shape()[static_cast<std::size_t>(d)];
  for (std::size_t d = static_cast<std::size_t>(axis); d < x.rank(); ++d) inner *= x.shape()[d];

  const Shape norm_shape(x.shape().begin() + axis, x.shape().end());
  auto param = [&](std::size_t i) -> std::vector<float> {
    if (!ctx.has_input(i)) return {};
    const Tensor& p = ctx.input(i);
    const auto& dp = floats(ctx, i);
    if (p.numel() == inner) return dp;
    // Expand a broadcastable scale or bias to the normalized block.
    if (broadcast_shapes(ctx, {&norm_shape, &p.shape()}) != norm_shape) {
      ctx.fail("scale or bias does not broadcast over the normalized axes");
    }
    std::vector<float> full(static_cast<std::size_t>(inner));
    broadcast_for_each<2>(norm_shape, {&norm_shape, &p.shape()},
                          [&](std::int64_t i2, const auto& off) {
                            full[static_cast<std::size_t>(i2)] =
                                dp[static_cast<std::size_t>(off[1])];
                          });
    return full;
  };
  const std::vector<float> scale = param(1);
  const std::vector<float> bias = param(2);
  if (scale.empty()) ctx.fail("LayerNormalization needs a scale");

  std::vector<float> y(dx.size());
  Shape stat_shape = x.shape();
  for (std::size_t d = static_cast<std::size_t>(axis); d < x.rank(); ++d) stat_shape[d] = 1;
  std::vector<float> means(static_cast<std::size_t>(outer));
  std::vector<float> inv_std(static_cast<std::size_t>(outer));
  for (std::int64_t o = 0; o < outer; ++o) {
    const float* row = dx.data() + o * inner;
    double mean = 0.0;
    for (std::int64_t j = 0; j < inner; ++j) mean += row[j];
    mean /= static_cast<double>(inner);
    double var = 0.0;
    for (std::int64_t j = 0; j < inner; ++j) {
      const double dlt = row[j] - mean;
      var += dlt * dlt;
    }
    var /= static_cast<double>(inner);
    const double inv = 1.0 / std::sqrt(var + eps);
    means[static_cast<std::size_t>(o)] = static_cast<float>(mean);
    inv_std[static_cast<std::size_t>(o)] = static_cast<float>(inv);
    float* out = y.data() + o * inner;
    for (std::int64_t j = 0; j < inner; ++j) {
      const double v = (row[j] - mean) * inv * scale[static_cast<std::size_t>(j)];
      out[j] = static_cast<float>(bias.empty() ? v : v + bias[static_cast<std::size_t>(j)]);
    }
  }
  return {Tensor(x.shape(), std::move(y)), Tensor(stat_shape, std::move(means)),
          Tensor(stat_shape, std::move(inv_std))};
}

enum class Reduce { mean, sum, max, min };

template <class T>
std::vector<T> reduce_values(const std::vector<T>& v, const Shape& shape,
                             const std::vector<bool>& reduced, Reduce kind, Shape& kept) {
  kept = shape;
  for (std::size_t d = 0; d < shape.size(); ++d) {
    if (reduced[d]) kept[d] = 1;
  }
  const std::int64_t n_out = numel(kept);
  std::vector<double> acc(static_cast<std::size_t>(n_out),
                          kind == Reduce::max   ? -std::numeric_limits<double>::infinity()
                          : kind == Reduce::min ? std::numeric_limits<double>::infinity()
                                                : 0.0);
  broadcast_for_each<1>(shape, {&kept}, [&](std::int64_t i, const auto& off) {
    double& a = acc[static_cast<std::size_t>(off[0])];
    const double x = static_cast<double>(v[static_cast<std::size_t>(i)]);
    switch (kind) {
      case Reduce::mean:
      case Reduce::sum: a += x; break;
      case Reduce::max: a = std::max(a, x); break;
      case Reduce::min: a = std::min(a, x); break;
    }
  });
  const double count =
      static_cast<double>(numel(shape)) / static_cast<double>(std::max<std::int64_t>(n_out, 1));
  std::vector<T> out(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) {
    out[i] = static_cast<T>(kind == Reduce::mean ? acc[i] / count : acc[i]);
  }
  return out;
}

// Shared by the Reduce* family; axes come from the attribute before opset 18
// (13 for ReduceSum) and from the second input afterwards.
std::vector<Tensor> reduce(const OpContext& ctx, Reduce kind) {
  const Tensor& x = ctx.input(0);
  const bool keepdims = ctx.attr_int("keepdims", 1) != 0;
  const bool noop_empty = ctx.attr_int("noop_with_empty_axes", 0) != 0;
  const std::vector<std::int64_t> axes = axes_argument(ctx, 1);
  if (axes.empty() && noop_empty) return {x};

  std::vector<bool> reduced(x.rank(), axes.empty());
  for (auto a : axes) reduced[static_cast<std::size_t>(normalize_axis(ctx, a, x.rank()))] = true;

  Shape kept;
  Tensor out;
  if (x.dtype() == DType::f32) {
    auto r = reduce_values(x.data<float>(), x.shape(), reduced, kind, kept);
    out = Tensor(kept, std::move(r));
  } else if (x.dtype() == DType::i64) {
    auto r = reduce_values(x.data<std::int64_t>(), x.shape(), reduced, kind, kept);
    out = Tensor(kept, std::move(r));
  } else {
    ctx.fail("reduction over boolean tensors");
  }
  if (!keepdims) {
    Shape squeezed;
    for (std::size_t d = 0; d < kept.size(); ++d) {
      if (!reduced[d]) squeezed.push_back(kept[d]);
    }
    out.reshape(squeezed);
  }
  return {std::move(out)};
}

std::vector<Tensor> reduce_mean(const OpContext& ctx) { return reduce(ctx, Reduce::mean); }
std::vector<Tensor> reduce_sum(const OpContext& ctx) { return reduce(ctx, Reduce::sum); }
std::vector<Tensor> reduce_max(const OpContext& ctx) { return reduce(ctx, Reduce::max); }
std::vector<Tensor> reduce_min(const OpContext& ctx) { return reduce(ctx, Reduce::min); }

template <bool IsMax>
std::vector<Tensor> arg_extremum(const OpContext& ctx) {
  const Tensor& x = ctx.input(0);
  if (x.rank() == 0) ctx.fail("arg reduction of a scalar");
  const std::int64_t axis = normalize_axis(ctx, ctx.attr_int("axis", 0), x.rank());
  const bool keepdims = ctx.attr_int("keepdims", 1) != 0;
  const bool last = ctx.attr_int("select_last_index", 0) != 0;

  Shape out_shape = x.shape();
  out_shape[static_cast<std::size_t>(axis)] = 1;
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(numel(out_shape)));
  visit(x, [&](const auto& v) {
    for_each_lane(x.shape(), axis, [&](std::int64_t base, std::int64_t n, std::int64_t stride) {
      std::int64_t best = 0;
      for (std::int64_t j = 1; j < n; ++j) {
        const auto a = v[static_cast<std::size_t>(base + j * stride)];
        const auto b = v[static_cast<std::size_t>(base + best * stride)];
        const bool better = IsMax ? (last ? a >= b : a > b) : (last ? a <= b : a < b);
        if (better) best = j;
      }
      out.push_back(best);
    });
  });
  // Lanes were visited outer-major, inner-minor, which is row-major order.
  if (!keepdims) out_shape.erase(out_shape.begin() + axis);
  return {Tensor(out_shape, std::move(out))};
}

}  // namespace

void register_nn_kernels(KernelTable& t) {
  t["MatMul"] = matmul;
  t["Gemm"] = gemm;
  t["Conv"] = conv;
  t["Softmax"] = softmax;
  t["LogSoftmax"] = log_softmax;
  t["LayerNormalization"] = layer_norm;
  t["ReduceMean"] = reduce_mean;
  t["ReduceSum"] = reduce_sum;
  t["ReduceMax"] = reduce_max;
  t["ReduceMin"] = reduce_min;
  t["ArgMax"] = arg_extremum<true>;
  t["ArgMin"] = arg_extremum<false>;
}

}  // namespace ddr::onnx::detail
