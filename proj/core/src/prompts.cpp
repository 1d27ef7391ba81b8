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

#include "ddr/prompts.hpp"

namespace ddr {

PromptPair make_prompt_pair(DegradationType type, const std::string& degraded_word,
                            const std::string& clean_word) {
  PromptPair pair{type, "A " + degraded_word + " photo with low-quality.",
                  "A " + clean_word + " photo with high-quality."};
  pair.validate();
  return pair;
}

PromptPair default_prompt_pair(DegradationType type) {
  switch (type) {
    case DegradationType::color:
      return make_prompt_pair(type, "unnatural color", "real color");
    case DegradationType::noise:
      return make_prompt_pair(type, "noise degraded", "clean");
    case DegradationType::blur:
      return make_prompt_pair(type, "blurry", "sharp");
    case DegradationType::exposure:
      return make_prompt_pair(type, "unnatural exposure", "natural exposure");
    case DegradationType::content:
      return make_prompt_pair(type, "bad content", "clear content");
  }
  return make_prompt_pair(type, "degraded", "clean");
}

std::vector<PromptPair> default_prompt_pairs(const std::vector<DegradationType>& types) {
  std::vector<PromptPair> pairs;
  pairs.reserve(types.size());
  for (DegradationType t : types) pairs.push_back(default_prompt_pair(t));
  return pairs;
}

const std::vector<DegradationType>& biqa_degradations() {
  static const std::vector<DegradationType> types = {
      DegradationType::color, DegradationType::noise, DegradationType::blur,
      DegradationType::exposure};
  return types;
}

const std::vector<DegradationType>& restoration_degradations() {
  static const std::vector<DegradationType> types = {
      DegradationType::color, DegradationType::content, DegradationType::blur};
  return types;
}

}  // namespace ddr
