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

#include "ddr/features.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "ddr/error.hpp"

namespace ddr {

FeatureVector::FeatureVector(std::vector<double> values, FeatureSource source)
    : values_(std::move(values)), source_(source) {
  if (values_.empty()) throw DimensionError("feature vector must not be empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw DimensionError("feature vector entry " + std::to_string(i) +
                           " is not finite");
    }
  }
}

FeatureVector FeatureVector::zeros(std::size_t n, FeatureSource source) {
  return FeatureVector(std::vector<double>(n, 0.0), source);
}

FeatureVector FeatureVector::with_source(FeatureSource source) const {
  FeatureVector copy = *this;
  copy.source_ = source;
  return copy;
}

std::string_view to_string(DegradationType type) noexcept {
  switch (type) {
    case DegradationType::color: return "color";
    case DegradationType::noise: return "noise";
    case DegradationType::blur: return "blur";
    case DegradationType::exposure: return "exposure";
    case DegradationType::content: return "content";
  }
  return "unknown";
}

DegradationType parse_degradation_type(std::string_view name) {
  for (DegradationType t : kAllDegradationTypes) {
    if (to_string(t) == name) return t;
  }
  throw ConfigError("unknown degradation type '" + std::string(name) +
                    "' (expected color, noise, blur, exposure or content)");
}

namespace {

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace

void PromptPair::validate() const {
  const std::string name(to_string(degradation));
  if (blank(degraded_prompt) || blank(clean_prompt)) {
    throw ConfigError("prompt pair for '" + name + "' has an empty prompt");
  }
}

DegradationSet::DegradationSet(std::vector<DegradationDirection> members)
    : members_(std::move(members)) {
  if (members_.empty()) throw ConfigError("degradation set is empty");
  std::set<DegradationType> seen;
  const std::size_t dim = members_.front().direction.size();
  for (const auto& m : members_) {
    if (!seen.insert(m.degradation).second) {
      throw ConfigError("degradation type '" +
                        std::string(to_string(m.degradation)) +
                        "' appears more than once");
    }
    if (m.direction.size() != dim) {
      throw DimensionError("degradation directions differ in length");
    }
  }
}

std::vector<std::string> DegradationSet::type_names() const {
  std::vector<std::string> names;
  names.reserve(members_.size());
  for (const auto& m : members_) names.emplace_back(to_string(m.degradation));
  return names;
}

}  // namespace ddr
