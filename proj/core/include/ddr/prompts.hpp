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

#ifndef DDR_PROMPTS_HPP_
#define DDR_PROMPTS_HPP_

#include <string>
#include <vector>

#include "ddr/features.hpp"

namespace ddr {

// "A {degraded} photo with low-quality." / "A {clean} photo with high-quality."
PromptPair make_prompt_pair(DegradationType type, const std::string& degraded_word,
                            const std::string& clean_word);

// Default wording for each degradation type.
PromptPair default_prompt_pair(DegradationType type);

std::vector<PromptPair> default_prompt_pairs(const std::vector<DegradationType>& types);

// {color, noise, blur, exposure}: quality assessment.
const std::vector<DegradationType>& biqa_degradations();
// {color, content, blur}: restoration objective.
const std::vector<DegradationType>& restoration_degradations();

}  // namespace ddr

#endif  // DDR_PROMPTS_HPP_
