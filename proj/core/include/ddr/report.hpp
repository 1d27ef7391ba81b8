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

// JSON and CSV renderings of scores, evaluations and correlation tables.
//
// JSON objects keep their keys sorted, numbers use the shortest text that
// round-trips, and non-finite values (the PSNR of identical images) become
// null. The same result therefore always serializes to the same bytes.

#ifndef DDR_REPORT_HPP_
#define DDR_REPORT_HPP_

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "ddr/harness.hpp"

namespace ddr {

using Json = nlohmann::json;

// Two-space indent with a trailing newline.
std::string canonical_json(const Json& doc);

Json score_json(const std::string& image, const QualityReport& q,
                const std::vector<std::string>& set_names, const std::string& model_id);
Json eval_json(const EvalResult& r);
Json descriptor_json(const DescriptorTable& t);
Json objective_json(const ObjectiveResult& r, const std::string& restored,
                    const std::string& reference, const std::vector<std::string>& set_names,
                    const std::string& model_id);

// Header row then one row per record; types appear as columns in set order.
std::string score_csv(const std::string& image, const QualityReport& q);
std::string eval_csv(const EvalResult& r);
std::string descriptor_csv(const DescriptorTable& t);
std::string objective_csv(const ObjectiveResult& r);

}  // namespace ddr

#endif  // DDR_REPORT_HPP_
