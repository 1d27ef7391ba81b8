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

#ifndef DDR_IMAGE_HPP_
#define DDR_IMAGE_HPP_

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace ddr {

/// H x W x 3 RGB raster with entries in [0, 1], interleaved row-major.
class Image {
 public:
  Image() = default;
  // Filled with `value` in every channel. Throws DimensionError if either
  // side is zero.
  Image(std::size_t height, std::size_t width, float value = 0.0f);
  // Adopts interleaved RGB data; validates size and range.
  Image(std::size_t height, std::size_t width, std::vector<float> rgb);

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  bool empty() const noexcept { return pixels_.empty(); }

  float& at(std::size_t y, std::size_t x, std::size_t c) noexcept {
    return pixels_[(y * width_ + x) * 3 + c];
  }
  float at(std::size_t y, std::size_t x, std::size_t c) const noexcept {
    return pixels_[(y * width_ + x) * 3 + c];
  }

  std::span<float> data() noexcept { return pixels_; }
  std::span<const float> data() const noexcept { return pixels_; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<float> pixels_;
};

// BT.601 luma, the single luminance definition used across the toolkit.
inline double luma(double r, double g, double b) noexcept {
  return 0.299 * r + 0.587 * g + 0.114 * b;
}

std::vector<double> luma_plane(const Image& img);

// Decodes PNG or JPEG (8- or 16-bit, gray/RGB/RGBA) into RGB in [0, 1].
// Throws DataError when the file is missing or cannot be decoded.
Image load_image(const std::filesystem::path& path);

// Writes an 8-bit PNG (rounded to nearest). Throws DataError on failure.
void save_png(const Image& img, const std::filesystem::path& path);

}  // namespace ddr

#endif  // DDR_IMAGE_HPP_
