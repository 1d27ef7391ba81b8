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

#include <algorithm>
#include <stdexcept>

#include "ddr/error.hpp"
#include "kernels_common.hpp"

namespace ddr::onnx {
namespace detail {

std::int64_t normalize_axis(const OpContext& ctx, std::int64_t axis, std::size_t rank) {
  const auto r = static_cast<std::int64_t>(rank);
  const std::int64_t a = axis < 0 ? axis + r : axis;
  if (a < 0 || a >= std::max<std::int64_t>(r, 1)) {
    ctx.fail("axis " + std::to_string(axis) + " out of range for rank " + std::to_string(rank));
  }
  return a;
}

std::vector<std::int64_t> strides_of(const Shape& shape) {
  std::vector<std::int64_t> st(shape.size(), 1);
  for (std::size_t d = shape.size(); d-- > 1;) st[d - 1] = st[d] * shape[d];
  return st;
}

Shape broadcast_shapes(const OpContext& ctx, const std::vector<const Shape*>& shapes) {
  std::size_t rank = 0;
  for (const Shape* s : shapes) rank = std::max(rank, s->size());
  Shape out(rank, 1);
  for (const Shape* s : shapes) {
    for (std::size_t d = 0; d < s->size(); ++d) {
      const std::int64_t dim = (*s)[s->size() - 1 - d];
      std::int64_t& o = out[rank - 1 - d];
      if (dim == o || dim == 1) continue;
      if (o == 1) {
        o = dim;
        continue;
      }
      ctx.fail("shapes cannot be broadcast together");
    }
  }
  return out;
}

std::vector<std::int64_t> axes_argument(const OpContext& ctx, std::size_t index) {
  if (ctx.has_attr("axes")) return ctx.attr_ints("axes");
  if (ctx.has_input(index)) return ctx.input(index).as_ints();
  return {};
}

}  // namespace detail

namespace {

const detail::KernelTable& table() {
  static const detail::KernelTable t = [] {
    detail::KernelTable k;
    detail::register_elementwise_kernels(k);
    detail::register_nn_kernels(k);
    detail::register_shape_kernels(k);
    return k;
  }();
  return t;
}

}  // namespace

OpKernel find_kernel(std::string_view op_type) {
  const auto it = table().find(std::string(op_type));
  return it == table().end() ? nullptr : it->second;
}

std::vector<std::string> supported_ops() {
  std::vector<std::string> ops;
  for (const auto& [name, kernel] : table()) ops.push_back(name);
  std::sort(ops.begin(), ops.end());
  return ops;
}

}  // namespace ddr::onnx
