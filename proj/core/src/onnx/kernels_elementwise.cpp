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

// Broadcasting arithmetic, comparisons, logic, unary math and casts.

#include <algorithm>
#include <cmath>
#include <limits>

#include "kernels_common.hpp"

namespace ddr::onnx::detail {
namespace {

template <class T, class Op>
Tensor binary_same(const OpContext& ctx, const Tensor& a, const Tensor& b, Op op) {
  const Shape out = broadcast_shapes(ctx, {&a.shape(), &b.shape()});
  const auto& da = a.data<T>();
  const auto& db = b.data<T>();
  std::vector<T> r(static_cast<std::size_t>(numel(out)));
  if (a.shape() == b.shape()) {
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = op(da[i], db[i]);
  } else if (b.numel() == 1 && a.shape() == out) {
    const T s = db[0];
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = op(da[i], s);
  } else {
    broadcast_for_each<2>(out, {&a.shape(), &b.shape()}, [&](std::int64_t i, const auto& off) {
      r[static_cast<std::size_t>(i)] = op(da[static_cast<std::size_t>(off[0])],
                                          db[static_cast<std::size_t>(off[1])]);
    });
  }
  return Tensor(out, std::move(r));
}

template <class T, class Op>
Tensor compare_same(const OpContext& ctx, const Tensor& a, const Tensor& b, Op op) {
  const Shape out = broadcast_shapes(ctx, {&a.shape(), &b.shape()});
  const auto& da = a.data<T>();
  const auto& db = b.data<T>();
  std::vector<std::uint8_t> r(static_cast<std::size_t>(numel(out)));
  broadcast_for_each<2>(out, {&a.shape(), &b.shape()}, [&](std::int64_t i, const auto& off) {
    r[static_cast<std::size_t>(i)] = op(da[static_cast<std::size_t>(off[0])],
                                        db[static_cast<std::size_t>(off[1])])
                                         ? 1
                                         : 0;
  });
  return Tensor(out, std::move(r));
}

const Tensor& same_type_pair(const OpContext& ctx) {
  const Tensor& a = ctx.input(0);
  if (ctx.input(1).dtype() != a.dtype()) ctx.fail("operand element types differ");
  return a;
}

// Integer modulo with the sign of the divisor.
std::int64_t floor_mod(std::int64_t a, std::int64_t b) {
  const std::int64_t r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? r + b : r;
}

template <class FloatOp, class IntOp>
std::vector<Tensor> arithmetic(const OpContext& ctx, FloatOp fop, IntOp iop) {
  const Tensor& a = same_type_pair(ctx);
  const Tensor& b = ctx.input(1);
  switch (a.dtype()) {
    case DType::f32: return {binary_same<float>(ctx, a, b, fop)};
    case DType::i64: return {binary_same<std::int64_t>(ctx, a, b, iop)};
    case DType::boolean: break;
  }
  ctx.fail("arithmetic on boolean tensors");
}

std::vector<Tensor> add(const OpContext& ctx) {
  return arithmetic(ctx, [](float x, float y) { return x + y; },
                    [](std::int64_t x, std::int64_t y) { return x + y; });
}
std::vector<Tensor> sub(const OpContext& ctx) {
  return arithmetic(ctx, [](float x, float y) { return x - y; },
                    [](std::int64_t x, std::int64_t y) { return x - y; });
}
std::vector<Tensor> mul(const OpContext& ctx) {
  return arithmetic(ctx, [](float x, float y) { return x * y; },
                    [](std::int64_t x, std::int64_t y) { return x * y; });
}
std::vector<Tensor> div(const OpContext& ctx) {
  return arithmetic(ctx, [](float x, float y) { return x / y; },
                    [&ctx](std::int64_t x, std::int64_t y) {
                      if (y == 0) ctx.fail("integer division by zero");
                      return x / y;
                    });
}

std::vector<Tensor> pow_kernel(const OpContext& ctx) {
  const Tensor& a = ctx.input(0);
  const Tensor& b = ctx.input(1);
  if (a.dtype() == DType::f32) {
    Tensor e = b;
    if (b.dtype() == DType::i64) {
      const auto& v = b.data<std::int64_t>();
      e = Tensor(b.shape(), std::vector<float>(v.begin(), v.end()));
    }
    return {binary_same<float>(ctx, a, e, [](float x, float y) {
      return y == 2.0f ? x * x : std::pow(x, y);
    })};
  }
  if (a.dtype() == DType::i64 && b.dtype() == DType::i64) {
    return {binary_same<std::int64_t>(ctx, a, b, [](std::int64_t x, std::int64_t y) {
      std::int64_t r = 1;
      for (std::int64_t k = 0; k < y; ++k) r *= x;
      return r;
    })};
  }
  ctx.fail("unsupported element types for Pow");
}

std::vector<Tensor> mod(const OpContext& ctx) {
  const bool fmod = ctx.attr_int("fmod", 0) != 0;
  return arithmetic(
      ctx, [](float x, float y) { return std::fmod(x, y); },
      [&ctx, fmod](std::int64_t x, std::int64_t y) {
        if (y == 0) ctx.fail("integer modulo by zero");
        return fmod ? x % y : floor_mod(x, y);
      });
}

template <bool IsMax>
std::vector<Tensor> extremum(const OpContext& ctx) {
  Tensor acc = ctx.input(0);
  for (std::size_t i = 1; i < ctx.num_inputs(); ++i) {
    const Tensor& b = ctx.input(i);
    if (b.dtype() != acc.dtype()) ctx.fail("operand element types differ");
    if (acc.dtype() == DType::f32) {
      acc = binary_same<float>(ctx, acc, b, [](float x, float y) {
        if (std::isnan(x) || std::isnan(y)) return std::numeric_limits<float>::quiet_NaN();
        return IsMax ? std::max(x, y) : std::min(x, y);
      });
    } else if (acc.dtype() == DType::i64) {
      acc = binary_same<std::int64_t>(ctx, acc, b, [](std::int64_t x, std::int64_t y) {
        return IsMax ? std::max(x, y) : std::min(x, y);
      });
    } else {
      ctx.fail("Max/Min on boolean tensors");
    }
  }
  return {std::move(acc)};
}

std::vector<Tensor> sum_kernel(const OpContext& ctx) {
  Tensor acc = ctx.input(0);
  for (std::size_t i = 1; i < ctx.num_inputs(); ++i) {
    if (acc.dtype() != DType::f32 || ctx.input(i).dtype() != DType::f32) {
      ctx.fail("Sum supports float tensors only");
    }
    acc = binary_same<float>(ctx, acc, ctx.input(i), [](float x, float y) { return x + y; });
  }
  return {std::move(acc)};
}

template <class Cmp>
std::vector<Tensor> comparison(const OpContext& ctx, Cmp cmp) {
  const Tensor& a = same_type_pair(ctx);
  const Tensor& b = ctx.input(1);
  switch (a.dtype()) {
    case DType::f32: return {compare_same<float>(ctx, a, b, cmp)};
    case DType::i64: return {compare_same<std::int64_t>(ctx, a, b, cmp)};
    case DType::boolean: return {compare_same<std::uint8_t>(ctx, a, b, cmp)};
  }
  ctx.fail("unsupported comparison");
}

std::vector<Tensor> equal(const OpContext& ctx) {
  return comparison(ctx, [](auto x, auto y) { return x == y; });
}
std::vector<Tensor> less(const OpContext& ctx) {
  return comparison(ctx, [](auto x, auto y) { return x < y; });
}
std::vector<Tensor> greater(const OpContext& ctx) {
  return comparison(ctx, [](auto x, auto y) { return x > y; });
}
std::vector<Tensor> less_equal(const OpContext& ctx) {
  return comparison(ctx, [](auto x, auto y) { return x <= y; });
}
std::vector<Tensor> greater_equal(const OpContext& ctx) {
  return comparison(ctx, [](auto x, auto y) { return x >= y; });
}

template <class Op>
std::vector<Tensor> logical(const OpContext& ctx, Op op) {
  const Tensor& a = ctx.input(0);
  const Tensor& b = ctx.input(1);
  if (a.dtype() != DType::boolean || b.dtype() != DType::boolean) {
    ctx.fail("logical operators need boolean inputs");
  }
  return {compare_same<std::uint8_t>(ctx, a, b, op)};
}

std::vector<Tensor> and_kernel(const OpContext& ctx) {
  return logical(ctx, [](auto x, auto y) { return x && y; });
}
std::vector<Tensor> or_kernel(const OpContext& ctx) {
  return logical(ctx, [](auto x, auto y) { return x || y; });
}
std::vector<Tensor> xor_kernel(const OpContext& ctx) {
  return logical(ctx, [](auto x, auto y) { return (x != 0) != (y != 0); });
}

std::vector<Tensor> not_kernel(const OpContext& ctx) {
  const Tensor& a = ctx.input(0);
  if (a.dtype() != DType::boolean) ctx.fail("Not needs a boolean input");
  std::vector<std::uint8_t> r = a.data<std::uint8_t>();
  for (auto& v : r) v = v ? 0 : 1;
  return {Tensor(a.shape(), std::move(r))};
}

std::vector<Tensor> where(const OpContext& ctx) {
  const Tensor& c = ctx.input(0);
  const Tensor& x = ctx.input(1);
  const Tensor& y = ctx.input(2);
  if (c.dtype() != DType::boolean) ctx.fail("Where condition must be boolean");
  if (x.dtype() != y.dtype()) ctx.fail("Where branches differ in element type");
  const Shape out = broadcast_shapes(ctx, {&c.shape(), &x.shape(), &y.shape()});
  const auto& dc = c.data<std::uint8_t>();
  return {visit(x, [&](const auto& dx) {
    using T = typename std::decay_t<decltype(dx)>::value_type;
    const auto& dy = y.data<T>();
    std::vector<T> r(static_cast<std::size_t>(numel(out)));
    broadcast_for_each<3>(out, {&c.shape(), &x.shape(), &y.shape()},
                          [&](std::int64_t i, const auto& off) {
                            r[static_cast<std::size_t>(i)] =
                                dc[static_cast<std::size_t>(off[0])]
                                    ? dx[static_cast<std::size_t>(off[1])]
                                    : dy[static_cast<std::size_t>(off[2])];
                          });
    return Tensor(out, std::move(r));
  })};
}

template <class F>
std::vector<Tensor> unary_float(const OpContext& ctx, F f) {
  const Tensor& a = ctx.input(0);
  if (a.dtype() != DType::f32) ctx.fail("expects a float tensor");
  std::vector<float> r = a.data<float>();
  for (float& v : r) v = f(v);
  return {Tensor(a.shape(), std::move(r))};
}

std::vector<Tensor> relu(const OpContext& ctx) {
  return unary_float(ctx, [](float x) { return x > 0.0f ? x : 0.0f; });
}
std::vector<Tensor> sigmoid(const OpContext& ctx) {
  return unary_float(ctx, [](float x) {
    return x >= 0.0f ? 1.0f / (1.0f + std::exp(-x)) : std::exp(x) / (1.0f + std::exp(x));
  });
}
std::vector<Tensor> tanh_kernel(const OpContext& ctx) {
  return unary_float(ctx, [](float x) { return std::tanh(x); });
}
std::vector<Tensor> exp_kernel(const OpContext& ctx) {
  return unary_float(ctx, [](float x) { return std::exp(x); });
}
std::vector<Tensor> log_kernel(const OpContext& ctx) {
  return unary_float(ctx, [](float x) { return std::log(x); });
}
std::vector<Tensor> sqrt_kernel(const OpContext& ctx) {
  return unary_float(ctx, [](float x) { return std::sqrt(x); });
}
std::vector<Tensor> erf_kernel(const OpContext& ctx) {
  return unary_float(ctx, [](float x) { return std::erf(x); });
}
std::vector<Tensor> reciprocal(const OpContext& ctx) {
  return unary_float(ctx, [](float x) { return 1.0f / x; });
}
std::vector<Tensor> floor_kernel(const OpContext& ctx) {
  return unary_float(ctx, [](float x) { return std::floor(x); });
}
std::vector<Tensor> ceil_kernel(const OpContext& ctx) {
  return unary_float(ctx, [](float x) { return std::ceil(x); });
}
std::vector<Tensor> round_kernel(const OpContext& ctx) {
  return unary_float(ctx, [](float x) { return std::nearbyint(x); });
}

std::vector<Tensor> gelu(const OpContext& ctx) {
  if (ctx.attr_string("approximate", "none") == "tanh") {
    return unary_float(ctx, [](float x) {
      constexpr float k = 0.7978845608028654f;  // sqrt(2 / pi)
      return 0.5f * x * (1.0f + std::tanh(k * (x + 0.044715f * x * x * x)));
    });
  }
  return unary_float(ctx, [](float x) { return 0.5f * x * (1.0f + std::erf(x * 0.70710678118654752f)); });
}

template <class FloatOp, class IntOp>
std::vector<Tensor> unary_signed(const OpContext& ctx, FloatOp fop, IntOp iop) {
  const Tensor& a = ctx.input(0);
  if (a.dtype() == DType::f32) return unary_float(ctx, fop);
  if (a.dtype() != DType::i64) ctx.fail("expects a numeric tensor");
  std::vector<std::int64_t> r = a.data<std::int64_t>();
  for (auto& v : r) v = iop(v);
  return {Tensor(a.shape(), std::move(r))};
}

std::vector<Tensor> neg(const OpContext& ctx) {
  return unary_signed(ctx, [](float x) { return -x; }, [](std::int64_t x) { return -x; });
}
std::vector<Tensor> abs_kernel(const OpContext& ctx) {
  return unary_signed(ctx, [](float x) { return std::fabs(x); },
                      [](std::int64_t x) { return x < 0 ? -x : x; });
}

std::vector<Tensor> clip(const OpContext& ctx) {
  const Tensor& a = ctx.input(0);
  if (a.dtype() != DType::f32) ctx.fail("Clip supports float tensors only");
  float lo = -std::numeric_limits<float>::infinity();
  float hi = std::numeric_limits<float>::infinity();
  if (ctx.opset() < 11) {
    lo = ctx.attr_float("min", lo);
    hi = ctx.attr_float("max", hi);
  } else {
    if (ctx.has_input(1)) lo = static_cast<float>(ctx.input(1).scalar_value());
    if (ctx.has_input(2)) hi = static_cast<float>(ctx.input(2).scalar_value());
  }
  return unary_float(ctx, [lo, hi](float x) { return std::min(std::max(x, lo), hi); });
}

std::vector<Tensor> cast(const OpContext& ctx) {
  const Tensor& a = ctx.input(0);
  const std::int64_t to = ctx.attr_int("to", 0);
  // element type codes of the serialized format
  constexpr std::int64_t kFloat = 1, kInt32 = 6, kInt64 = 7, kBool = 9, kFloat16 = 10,
                         kDouble = 11;
  return {visit(a, [&](const auto& src) -> Tensor {
    switch (to) {
      case kFloat:
      case kDouble:
      case kFloat16:
        return Tensor(a.shape(), std::vector<float>(src.begin(), src.end()));
      case kInt32:
      case kInt64: {
        std::vector<std::int64_t> r(src.size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = static_cast<std::int64_t>(src[i]);
        return Tensor(a.shape(), std::move(r));
      }
      case kBool: {
        std::vector<std::uint8_t> r(src.size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = src[i] != 0 ? 1 : 0;
        return Tensor(a.shape(), std::move(r));
      }
      default:
        ctx.fail("unsupported cast target type " + std::to_string(to));
    }
  })};
}

}  // namespace

void register_elementwise_kernels(KernelTable& t) {
  t["Add"] = add;
  t["Sub"] = sub;
  t["Mul"] = mul;
  t["Div"] = div;
  t["Pow"] = pow_kernel;
  t["Mod"] = mod;
  t["Max"] = extremum<true>;
  t["Min"] = extremum<false>;
  t["Sum"] = sum_kernel;
  t["Equal"] = equal;
  t["Less"] = less;
  t["Greater"] = greater;
  t["LessOrEqual"] = less_equal;
  t["GreaterOrEqual"] = greater_equal;
  t["And"] = and_kernel;
  t["Or"] = or_kernel;
  t["Xor"] = xor_kernel;
  t["Not"] = not_kernel;
  t["Where"] = where;
  t["Relu"] = relu;
  t["Sigmoid"] = sigmoid;
  t["Tanh"] = tanh_kernel;
  t["Exp"] = exp_kernel;
  t["Log"] = log_kernel;
  t["Sqrt"] = sqrt_kernel;
  t["Erf"] = erf_kernel;
  t["Reciprocal"] = reciprocal;
  t["Floor"] = floor_kernel;
  t["Ceil"] = ceil_kernel;
  t["Round"] = round_kernel;
  t["Gelu"] = gelu;
  t["Neg"] = neg;
  t["Abs"] = abs_kernel;
  t["Clip"] = clip;
  t["Cast"] = cast;
}

}  // namespace ddr::onnx::detail
