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

// Handcrafted pixel-domain degradations and degradation ladders.

#ifndef DDR_DEGRADATIONS_HPP_
#define DDR_DEGRADATIONS_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ddr/features.hpp"
#include "ddr/image.hpp"

namespace ddr {

class EncoderSession;

enum class DegradationKind { gaussian_blur, gaussian_noise, exposure, desaturate };

std::string_view to_string(DegradationKind kind) noexcept;
// Accepts the canonical names plus "blur" and "noise". Throws ConfigError.
DegradationKind parse_degradation_kind(std::string_view name);

/// One degradation D(i, level).
///
///  - gaussian_blur: separable Gaussian, sigma = level, radius ceil(3 sigma),
///    half-sample symmetric reflection at the borders.
///  - gaussian_noise: i.i.d. N(0, level^2) per channel from `seed`.
///  - exposure: gain of 2^level stops; level may be negative.
///  - desaturate: blend toward luma by min(level, 1).
///
/// Level 0 is the identity for every kind.
struct DegradationSpec {
  DegradationKind kind = DegradationKind::gaussian_blur;
  double level = 0.0;
  std::uint64_t seed = 0;

  // Throws ConfigError for non-finite levels, or negative levels on any
  // kind other than exposure.
  void validate() const;
};

// Parses "kind:level[:seed]".
DegradationSpec parse_degradation_spec(std::string_view text);
std::string to_string(const DegradationSpec& spec);

struct LadderSpec {
  DegradationKind kind = DegradationKind::gaussian_blur;
  std::vector<double> levels;
  std::uint64_t seed = 0;
};

// Parses "kind:l0,l1,...[:seed]".
LadderSpec parse_ladder_spec(std::string_view text);

// Normalized 1-D Gaussian taps, length 2 * ceil(3 sigma) + 1.
std::vector<double> gaussian_kernel(double sigma);

Image apply(const Image& img, const DegradationSpec& spec);

// One image per level; the same seed at every rung. Levels must be strictly
// ascending; the first must be >= 0 except for exposure.
std::vector<Image> ladder(const Image& img, DegradationKind kind,
                          std::span<const double> levels, std::uint64_t seed = 0);

using FeatureMetric = std::function<double(const FeatureVector&, const FeatureVector&)>;

// metric(encode(img), encode(apply(img, spec))); cosine disparity by default.
double ddr_pixel(const Image& img, const DegradationSpec& spec,
                 const EncoderSession& image_session, const FeatureMetric& metric = {});

}  // namespace ddr

#endif  // DDR_DEGRADATIONS_HPP_
