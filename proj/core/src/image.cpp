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

#include "ddr/image.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "ddr/error.hpp"

namespace ddr {

Image::Image(std::size_t height, std::size_t width, float value)
    : height_(height), width_(width), pixels_(height * width * 3, value) {
  if (height == 0 || width == 0) throw DimensionError("image must be at least 1x1");
  if (!(value >= 0.0f && value <= 1.0f)) {
    throw DimensionError("image fill value outside [0, 1]");
  }
}

Image::Image(std::size_t height, std::size_t width, std::vector<float> rgb)
    : height_(height), width_(width), pixels_(std::move(rgb)) {
  if (height == 0 || width == 0) throw DimensionError("image must be at least 1x1");
  if (pixels_.size() != height * width * 3) {
    throw DimensionError("pixel buffer does not match " + std::to_string(height) +
                         "x" + std::to_string(width) + "x3");
  }
  for (float v : pixels_) {
    if (!(v >= 0.0f && v <= 1.0f)) throw DimensionError("pixel value outside [0, 1]");
  }
}

std::vector<double> luma_plane(const Image& img) {
  std::vector<double> out(img.height() * img.width());
  const auto px = img.data();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = luma(px[3 * i], px[3 * i + 1], px[3 * i + 2]);
  }
  return out;
}

Image load_image(const std::filesystem::path& path) {
  if (!std::filesystem::is_regular_file(path)) {
    throw DataError("image not found: " + path.string());
  }
  cv::Mat raw;
  try {
    raw = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  } catch (const cv::Exception& e) {
    throw DataError("cannot decode " + path.string() + ": " + e.what());
  }
  if (raw.empty()) throw DataError("cannot decode " + path.string());

  if (raw.depth() != CV_8U && raw.depth() != CV_16U) {
    throw DataError("unsupported sample depth in " + path.string());
  }
  cv::Mat rgb;
  switch (raw.channels()) {
    case 1: cv::cvtColor(raw, rgb, cv::COLOR_GRAY2RGB); break;
    case 3: cv::cvtColor(raw, rgb, cv::COLOR_BGR2RGB); break;
    case 4: cv::cvtColor(raw, rgb, cv::COLOR_BGRA2RGB); break;
    default: throw DataError("unsupported channel count in " + path.string());
  }

  const auto h = static_cast<std::size_t>(rgb.rows);
  const auto w = static_cast<std::size_t>(rgb.cols);
  std::vector<float> px(h * w * 3);
  // Divide rather than multiply by a reciprocal so 8-bit input maps to the
  // correctly rounded float of v / 255.
  const bool wide = rgb.depth() == CV_16U;
  const float peak = wide ? 65535.0f : 255.0f;
  for (std::size_t y = 0; y < h; ++y) {
    const int row = static_cast<int>(y);
    for (std::size_t i = 0; i < w * 3; ++i) {
      const float v = wide ? rgb.ptr<std::uint16_t>(row)[i] : rgb.ptr<std::uint8_t>(row)[i];
      px[y * w * 3 + i] = v / peak;
    }
  }
  return Image(h, w, std::move(px));
}

void save_png(const Image& img, const std::filesystem::path& path) {
  cv::Mat bgr(static_cast<int>(img.height()), static_cast<int>(img.width()), CV_8UC3);
  for (std::size_t y = 0; y < img.height(); ++y) {
    auto* row = bgr.ptr<unsigned char>(static_cast<int>(y));
    for (std::size_t x = 0; x < img.width(); ++x) {
      for (std::size_t c = 0; c < 3; ++c) {
        const double v = std::round(static_cast<double>(img.at(y, x, c)) * 255.0);
        row[x * 3 + (2 - c)] = static_cast<unsigned char>(std::clamp(v, 0.0, 255.0));
      }
    }
  }
  bool ok = false;
  try {
    ok = cv::imwrite(path.string(), bgr);
  } catch (const cv::Exception& e) {
    throw DataError("cannot write " + path.string() + ": " + e.what());
  }
  if (!ok) throw DataError("cannot write " + path.string());
}

}  // namespace ddr
