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

#include "ddr/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ddr/error.hpp"

namespace ddr {
namespace {

constexpr int kPrecisionBits = 32 - 8 - 2;

double bicubic(double x) {
  constexpr double a = -0.5;
  x = std::fabs(x);
  if (x < 1.0) return ((a + 2.0) * x - (a + 3.0)) * x * x + 1.0;
  if (x < 2.0) return (((x - 5.0) * x + 8.0) * x - 4.0) * a;
  return 0.0;
}

struct Taps {
  std::size_t first;
  std::vector<std::int32_t> weights;  // fixed point, kPrecisionBits fraction bits
};

std::vector<Taps> resample_taps(std::size_t in_size, std::size_t out_size) {
  constexpr double kSupport = 2.0;
  const double scale = static_cast<double>(in_size) / static_cast<double>(out_size);
  const double filter_scale = std::max(scale, 1.0);
  const double support = kSupport * filter_scale;
  const double inv_scale = 1.0 / filter_scale;
  std::vector<Taps> taps(out_size);
  std::vector<double> w;
  for (std::size_t i = 0; i < out_size; ++i) {
    const double center = (static_cast<double>(i) + 0.5) * scale;
    // truncation toward zero matches the reference resampler
    auto lo = static_cast<std::ptrdiff_t>(center - support + 0.5);
    auto hi = static_cast<std::ptrdiff_t>(center + support + 0.5);
    lo = std::max<std::ptrdiff_t>(lo, 0);
    hi = std::min<std::ptrdiff_t>(hi, static_cast<std::ptrdiff_t>(in_size));
    w.clear();
    double total = 0.0;
    for (std::ptrdiff_t x = lo; x < hi; ++x) {
      w.push_back(bicubic((static_cast<double>(x) - center + 0.5) * inv_scale));
      total += w.back();
    }
    Taps& t = taps[i];
    t.first = static_cast<std::size_t>(lo);
    for (double v : w) {
      if (total != 0.0) v /= total;
      const double fixed = v * static_cast<double>(1 << kPrecisionBits);
      t.weights.push_back(static_cast<std::int32_t>(v < 0.0 ? fixed - 0.5 : fixed + 0.5));
    }
  }
  return taps;
}

std::uint8_t clip8(std::int32_t acc) {
  return static_cast<std::uint8_t>(std::clamp(acc >> kPrecisionBits, 0, 255));
}

}  // namespace

PreprocessedTensor::PreprocessedTensor() : values_(kNumel, 0.0f) {}

PreprocessedTensor::PreprocessedTensor(std::vector<float> chw) : values_(std::move(chw)) {
  if (values_.size() != kNumel) {
    throw DimensionError("preprocessed tensor must hold 3x224x224 values, got " +
                         std::to_string(values_.size()));
  }
}

std::uint8_t quantize_u8(float v) noexcept {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0f, 1.0f) * 255.0f));
}

Plane8 resize_bicubic(const Plane8& src, std::size_t out_height, std::size_t out_width) {
  if (src.height == 0 || src.width == 0 || out_height == 0 || out_width == 0) {
    throw DimensionError("cannot resize to or from an empty plane");
  }
  constexpr std::int32_t kHalf = 1 << (kPrecisionBits - 1);
  Plane8 cur = src;
  if (out_width != cur.width) {
    const auto taps = resample_taps(cur.width, out_width);
    Plane8 next{cur.height, out_width, std::vector<std::uint8_t>(cur.height * out_width)};
    for (std::size_t y = 0; y < cur.height; ++y) {
      const std::uint8_t* row = cur.values.data() + y * cur.width;
      for (std::size_t x = 0; x < out_width; ++x) {
        std::int32_t acc = kHalf;
        for (std::size_t k = 0; k < taps[x].weights.size(); ++k) {
          acc += row[taps[x].first + k] * taps[x].weights[k];
        }
        next.values[y * out_width + x] = clip8(acc);
      }
    }
    cur = std::move(next);
  }
  if (out_height != cur.height) {
    const auto taps = resample_taps(cur.height, out_height);
    Plane8 next{out_height, cur.width, std::vector<std::uint8_t>(out_height * cur.width)};
    for (std::size_t y = 0; y < out_height; ++y) {
      for (std::size_t x = 0; x < cur.width; ++x) {
        std::int32_t acc = kHalf;
        for (std::size_t k = 0; k < taps[y].weights.size(); ++k) {
          acc += cur.values[(taps[y].first + k) * cur.width + x] * taps[y].weights[k];
        }
        next.values[y * cur.width + x] = clip8(acc);
      }
    }
    cur = std::move(next);
  }
  return cur;
}

PreprocessedTensor preprocess(const Image& img) {
  if (img.empty()) throw DimensionError("cannot preprocess an empty image");
  const std::size_t h = img.height(), w = img.width();
  std::size_t oh = kInputSize, ow = kInputSize;
  if (w <= h) {
    oh = static_cast<std::size_t>(static_cast<double>(kInputSize) * static_cast<double>(h) /
                                  static_cast<double>(w));
  } else {
    ow = static_cast<std::size_t>(static_cast<double>(kInputSize) * static_cast<double>(w) /
                                  static_cast<double>(h));
  }
  // centered crop offset, ties rounded to even
  const auto top = static_cast<std::size_t>(
      std::nearbyint(static_cast<double>(oh - kInputSize) / 2.0));
  const auto left = static_cast<std::size_t>(
      std::nearbyint(static_cast<double>(ow - kInputSize) / 2.0));

  std::vector<float> chw(PreprocessedTensor::kNumel);
  for (std::size_t c = 0; c < 3; ++c) {
    Plane8 plane{h, w, std::vector<std::uint8_t>(h * w)};
    for (std::size_t y = 0; y < h; ++y) {
      for (std::size_t x = 0; x < w; ++x) plane.values[y * w + x] = quantize_u8(img.at(y, x, c));
    }
    const Plane8 resized = resize_bicubic(plane, oh, ow);
    const auto mean = static_cast<float>(kChannelMean[c]);
    const auto stdev = static_cast<float>(kChannelStd[c]);
    for (std::size_t y = 0; y < kInputSize; ++y) {
      for (std::size_t x = 0; x < kInputSize; ++x) {
        const float v = static_cast<float>(resized.values[(y + top) * ow + x + left]) / 255.0f;
        chw[(c * kInputSize + y) * kInputSize + x] = (v - mean) / stdev;
      }
    }
  }
  return PreprocessedTensor(std::move(chw));
}

}  // namespace ddr
