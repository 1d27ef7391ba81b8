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

#include "ddr/ddr.hpp"

#include <algorithm>
#include <cmath>

#include "ddr/error.hpp"

namespace ddr {
namespace {

void require_same_length(const FeatureVector& a, const FeatureVector& b,
                         const char* what) {
  if (a.size() != b.size()) {
    throw DimensionError(std::string(what) + ": length mismatch (" +
                         std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()) + ")");
  }
}

}  // namespace

FeatureVector degradation_direction(const FeatureVector& t_minus,
                                    const FeatureVector& t_plus) {
  require_same_length(t_minus, t_plus, "degradation_direction");
  std::vector<double> out(t_minus.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = t_minus[i] - t_plus[i];
  return FeatureVector(std::move(out), t_minus.source());
}

VectorStats vector_stats(const FeatureVector& v) {
  if (v.size() < 2) {
    throw DegenerateInputError("vector_stats needs at least two entries");
  }
  const auto n = static_cast<double>(v.size());
  double sum = 0.0;
  for (double x : v.values()) sum += x;
  const double mean = sum / n;
  double ss = 0.0;
  for (double x : v.values()) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / n)};
}

FeatureVector adapt_direction(const FeatureVector& direction,
                              const FeatureVector& image) {
  require_same_length(direction, image, "adapt_direction");
  const VectorStats t = vector_stats(direction);
  if (!(t.std > kAdaptationEpsilon)) {
    throw DegenerateDirectionError(
        "degradation direction has std " + std::to_string(t.std) +
        " and cannot be adapted");
  }
  const VectorStats f = vector_stats(image);
  std::vector<double> out(direction.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = f.std * ((direction[i] - t.mean) / t.std) + f.mean;
  }
  return FeatureVector(std::move(out), FeatureSource::synthetic);
}

FeatureVector fuse(const FeatureVector& image,
                   const FeatureVector& adapted_direction) {
  require_same_length(image, adapted_direction, "fuse");
  std::vector<double> out(image.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = image[i] + adapted_direction[i];
  }
  return FeatureVector(std::move(out), FeatureSource::synthetic);
}

namespace {

struct Products {
  double dot = 0.0, xx = 0.0, yy = 0.0;
};

Products products(const FeatureVector& x, const FeatureVector& y, double sx, double sy) {
  Products p;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = x[i] * sx, b = y[i] * sy;
    p.dot += a * b;
    p.xx += a * a;
    p.yy += b * b;
  }
  return p;
}

// 1 / max|v|, or 1 for the zero vector.
double inverse_max_abs(const FeatureVector& v) {
  double m = 0.0;
  for (double e : v.values()) m = std::max(m, std::fabs(e));
  return m > 0.0 ? 1.0 / m : 1.0;
}

}  // namespace

double cosine_disparity(const FeatureVector& x, const FeatureVector& y) {
  require_same_length(x, y, "cosine_disparity");
  Products p = products(x, y, 1.0, 1.0);
  if (!std::isfinite(p.xx) || !std::isfinite(p.yy) || !std::isfinite(p.dot)) {
    // Cosine is scale-free, so retry on max-abs normalized copies.
    p = products(x, y, inverse_max_abs(x), inverse_max_abs(y));
  }
  if (p.xx == 0.0 || p.yy == 0.0) {
    throw UndefinedDisparityError("cosine disparity of a zero-norm vector");
  }
  const double denom = std::isfinite(p.xx * p.yy) ? std::sqrt(p.xx * p.yy)
                                                  : std::sqrt(p.xx) * std::sqrt(p.yy);
  const double cosine = std::clamp(p.dot / denom, -1.0, 1.0);
  return 1.0 - cosine;
}

double ddr_text(const FeatureVector& image, const DegradationDirection& dir) {
  return cosine_disparity(image, fuse(image, adapt_direction(dir.direction, image)));
}

double quality_score(const FeatureVector& image, const DegradationSet& set) {
  double sum = 0.0;
  for (const auto& member : set) {
    try {
      sum += ddr_text(image, member);
    } catch (const DegenerateDirectionError& e) {
      throw DegenerateDirectionError(
          "degradation '" + std::string(to_string(member.degradation)) +
          "': " + e.what());
    }
  }
  return sum / static_cast<double>(set.size());
}

}  // namespace ddr
