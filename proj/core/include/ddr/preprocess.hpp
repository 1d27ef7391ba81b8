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

// Image encoder input preparation.

#ifndef DDR_PREPROCESS_HPP_
#define DDR_PREPROCESS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ddr/image.hpp"

namespace ddr {

inline constexpr std::size_t kInputSize = 224;
inline constexpr std::array<double, 3> kChannelMean = {0.48145466, 0.4578275, 0.40821073};
inline constexpr std::array<double, 3> kChannelStd = {0.26862954, 0.26130258, 0.27577711};

/// Channel-standardized 3 x 224 x 224 tensor, planar (CHW) float32.
class PreprocessedTensor {
 public:
  static constexpr std::size_t kNumel = 3 * kInputSize * kInputSize;

  PreprocessedTensor();
  explicit PreprocessedTensor(std::vector<float> chw);

  float at(std::size_t c, std::size_t y, std::size_t x) const noexcept {
    return values_[(c * kInputSize + y) * kInputSize + x];
  }
  std::span<const float> values() const noexcept { return values_; }

 private:
  std::vector<float> values_;
};

// One 8-bit plane, row-major.
struct Plane8 {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<std::uint8_t> values;
};

// Nearest 8-bit code of a [0, 1] sample; exact for values decoded from
// 8-bit files.
std::uint8_t quantize_u8(float v) noexcept;

/// Antialiased bicubic resampling on 8-bit planes (a = -0.5, support
/// widened by the downscale factor) with 22-bit fixed-point weights,
/// horizontal pass then vertical, each rounded and clamped to 8 bits. An
/// axis whose size does not change is copied through.
Plane8 resize_bicubic(const Plane8& src, std::size_t out_height, std::size_t out_width);

/// The published CLIP input pipeline: quantize to 8 bits, resize so the
/// shorter side is 224 (longer side truncated), take the centered 224 x 224
/// crop (offset rounded half to even), then (v / 255 - mean[c]) / std[c] in
/// single precision.
PreprocessedTensor preprocess(const Image& img);

}  // namespace ddr

#endif  // DDR_PREPROCESS_HPP_
