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

// Helpers shared by the operator kernel translation units.

#ifndef DDR_SRC_ONNX_KERNELS_COMMON_HPP_
#define DDR_SRC_ONNX_KERNELS_COMMON_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "ddr/onnx/graph.hpp"
#include "ddr/onnx/tensor.hpp"

namespace ddr::onnx::detail {

// Negative axes count from the back. Fails the node when out of range.
std::int64_t normalize_axis(const OpContext& ctx, std::int64_t axis, std::size_t rank);

// Row-major strides.
std::vector<std::int64_t> strides_of(const Shape& shape);

// Multidirectional (numpy) broadcast of several shapes.
Shape broadcast_shapes(const OpContext& ctx, const std::vector<const Shape*>& shapes);

/// Visits every element of `out` with the matching flat offset into each of
/// the broadcast inputs: f(out_index, offsets).
template <std::size_t N, class F>
void broadcast_for_each(const Shape& out, const std::array<const Shape*, N>& ins, F&& f) {
  const std::size_t rank = out.size();
  std::array<std::vector<std::int64_t>, N> st;
  for (std::size_t k = 0; k < N; ++k) {
    const Shape& s = *ins[k];
    st[k].assign(rank, 0);
    std::int64_t stride = 1;
    for (std::size_t d = 0; d < s.size(); ++d) {
      const std::size_t src = s.size() - 1 - d;
      const std::size_t dst = rank - 1 - d;
      st[k][dst] = s[src] == 1 ? 0 : stride;
      stride *= s[src];
    }
  }
  const std::int64_t total = numel(out);
  std::array<std::int64_t, N> off{};
  std::vector<std::int64_t> counter(rank, 0);
  for (std::int64_t i = 0; i < total; ++i) {
    f(i, off);
    for (std::size_t dd = rank; dd-- > 0;) {
      ++counter[dd];
      for (std::size_t k = 0; k < N; ++k) off[k] += st[k][dd];
      if (counter[dd] < out[dd]) break;
      for (std::size_t k = 0; k < N; ++k) off[k] -= st[k][dd] * out[dd];
      counter[dd] = 0;
    }
  }
}

// Axes from the attribute (older opsets) or from input `index`.
std::vector<std::int64_t> axes_argument(const OpContext& ctx, std::size_t index);

using KernelTable = std::unordered_map<std::string, OpKernel>;

void register_elementwise_kernels(KernelTable& table);
void register_nn_kernels(KernelTable& table);
void register_shape_kernels(KernelTable& table);

}  // namespace ddr::onnx::detail

#endif  // DDR_SRC_ONNX_KERNELS_COMMON_HPP_
