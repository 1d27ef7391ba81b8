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

#include "ddr/metrics.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ddr/error.hpp"

namespace ddr {
namespace {

void require_same_dims(const Image& a, const Image& b) {
  if (a.height() != b.height() || a.width() != b.width()) {
    throw DimensionError("image dimensions differ: " + std::to_string(a.height()) + "x" +
                         std::to_string(a.width()) + " vs " + std::to_string(b.height()) +
                         "x" + std::to_string(b.width()));
  }
}

// Separable weighted window sums over the valid region.
std::vector<double> filter_valid(const std::vector<double>& plane, std::size_t h,
                                 std::size_t w, const std::vector<double>& taps) {
  const std::size_t n = taps.size();
  const std::size_t ow = w - n + 1, oh = h - n + 1;
  std::vector<double> rows(h * ow);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (std::size_t t = 0; t < n; ++t) acc += taps[t] * plane[y * w + x + t];
      rows[y * ow + x] = acc;
    }
  }
  std::vector<double> out(oh * ow);
  for (std::size_t y = 0; y < oh; ++y) {
    for (std::size_t x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (std::size_t t = 0; t < n; ++t) acc += taps[t] * rows[(y + t) * ow + x];
      out[y * ow + x] = acc;
    }
  }
  return out;
}

}  // namespace

PsnrResult psnr(const Image& a, const Image& b) {
  require_same_dims(a, b);
  const auto pa = a.data(), pb = b.data();
  double se = 0.0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const double d = static_cast<double>(pa[i]) - pb[i];
    se += d * d;
  }
  const double mse = se / static_cast<double>(pa.size());
  if (mse == 0.0) return {std::numeric_limits<double>::infinity(), true};
  return {10.0 * std::log10(1.0 / mse), false};
}

double ssim(const Image& a, const Image& b, const SsimParams& params) {
  require_same_dims(a, b);
  const auto n = static_cast<std::size_t>(params.window);
  if (params.window < 1 || a.height() < n || a.width() < n) {
    throw DimensionError("ssim needs images of at least " + std::to_string(params.window) +
                         "x" + std::to_string(params.window));
  }
  std::vector<double> taps(n);
  double sum = 0.0;
  const double c = (static_cast<double>(n) - 1.0) / 2.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = static_cast<double>(i) - c;
    taps[i] = std::exp(-d * d / (2.0 * params.sigma * params.sigma));
    sum += taps[i];
  }
  for (double& t : taps) t /= sum;

  const std::size_t h = a.height(), w = a.width();
  const std::vector<double> x = luma_plane(a), y = luma_plane(b);
  std::vector<double> xx(x.size()), yy(x.size()), xy(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    xx[i] = x[i] * x[i];
    yy[i] = y[i] * y[i];
    xy[i] = x[i] * y[i];
  }
  const auto mx = filter_valid(x, h, w, taps), my = filter_valid(y, h, w, taps);
  const auto sxx = filter_valid(xx, h, w, taps), syy = filter_valid(yy, h, w, taps);
  const auto sxy = filter_valid(xy, h, w, taps);

  const double c1 = params.k1 * params.k1, c2 = params.k2 * params.k2;
  double total = 0.0;
  for (std::size_t i = 0; i < mx.size(); ++i) {
    const double vx = sxx[i] - mx[i] * mx[i];
    const double vy = syy[i] - my[i] * my[i];
    const double cov = sxy[i] - mx[i] * my[i];
    total += ((2.0 * mx[i] * my[i] + c1) * (2.0 * cov + c2)) /
             ((mx[i] * mx[i] + my[i] * my[i] + c1) * (vx + vy + c2));
  }
  return total / static_cast<double>(mx.size());
}

double colorfulness(const Image& img) {
  const auto px = img.data();
  const std::size_t n = px.size() / 3;
  std::vector<double> rg(n), yb(n);
  double mrg = 0.0, myb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = px[3 * i], g = px[3 * i + 1], b = px[3 * i + 2];
    rg[i] = r - g;
    yb[i] = 0.5 * (r + g) - b;
    mrg += rg[i];
    myb += yb[i];
  }
  mrg /= static_cast<double>(n);
  myb /= static_cast<double>(n);
  double vrg = 0.0, vyb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    vrg += (rg[i] - mrg) * (rg[i] - mrg);
    vyb += (yb[i] - myb) * (yb[i] - myb);
  }
  vrg /= static_cast<double>(n);
  vyb /= static_cast<double>(n);
  return std::sqrt(vrg + vyb) + 0.3 * std::sqrt(mrg * mrg + myb * myb);
}

double sharpness_proxy(const Image& img) {
  const std::size_t h = img.height(), w = img.width();
  if (h < 3 || w < 3) throw DegenerateInputError("sharpness proxy needs at least 3x3 pixels");
  const std::vector<double> y = luma_plane(img);
  double energy = 0.0;
  for (std::size_t r = 1; r + 1 < h; ++r) {
    for (std::size_t c = 1; c + 1 < w; ++c) {
      const double gx = 0.5 * (y[r * w + c + 1] - y[r * w + c - 1]);
      const double gy = 0.5 * (y[(r + 1) * w + c] - y[(r - 1) * w + c]);
      energy += gx * gx + gy * gy;
    }
  }
  return energy / static_cast<double>((h - 2) * (w - 2));
}

}  // namespace ddr
