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

#ifndef DDR_FEATURES_HPP_
#define DDR_FEATURES_HPP_

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ddr {

enum class FeatureSource { image, text, synthetic };

/// A real embedding produced by an encoder (or built by hand in tests).
///
/// Entries are stored in double precision regardless of what the encoder
/// emitted. Construction rejects empty vectors and non-finite entries.
class FeatureVector {
 public:
  explicit FeatureVector(std::vector<double> values,
                         FeatureSource source = FeatureSource::synthetic);

  static FeatureVector zeros(std::size_t n,
                             FeatureSource source = FeatureSource::synthetic);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  FeatureSource source() const noexcept { return source_; }

  // Sets the source tag; values are untouched.
  FeatureVector with_source(FeatureSource source) const;

  friend bool operator==(const FeatureVector& a, const FeatureVector& b) {
    return a.values_ == b.values_;
  }

 private:
  std::vector<double> values_;
  FeatureSource source_;
};

enum class DegradationType { color, noise, blur, exposure, content };

inline constexpr std::array<DegradationType, 5> kAllDegradationTypes = {
    DegradationType::color, DegradationType::noise, DegradationType::blur,
    DegradationType::exposure, DegradationType::content};

std::string_view to_string(DegradationType type) noexcept;
// Throws ConfigError on unknown names.
DegradationType parse_degradation_type(std::string_view name);

/// Degraded (P-) and clean (P+) prompt for one degradation type.
struct PromptPair {
  DegradationType degradation;
  std::string degraded_prompt;
  std::string clean_prompt;

  // Throws ConfigError if either prompt is blank. Identical prompts pass
  // here and surface later as a degenerate direction.
  void validate() const;
};

struct DegradationDirection {
  DegradationType degradation;
  FeatureVector direction;
};

/// Ordered, non-empty collection of directions with unique types.
class DegradationSet {
 public:
  explicit DegradationSet(std::vector<DegradationDirection> members);

  std::size_t size() const noexcept { return members_.size(); }
  const std::vector<DegradationDirection>& members() const noexcept {
    return members_;
  }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  std::vector<std::string> type_names() const;

 private:
  std::vector<DegradationDirection> members_;
};

}  // namespace ddr

#endif  // DDR_FEATURES_HPP_
