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

#include "ddr/report.hpp"

#include <cmath>
#include <cstdio>

namespace ddr {

namespace {

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json ddr_map(const std::vector<TypeScore>& scores) {
  Json m = Json::object();
  for (const auto& s : scores) m[std::string(to_string(s.degradation))] = number(s.value);
  return m;
}

// Shortest round-trip text, matching the JSON rendering.
std::string fmt(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  return Json(v).dump();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string type_header(const std::vector<TypeScore>& scores) {
  std::string h;
  for (const auto& s : scores) h += "," + std::string(to_string(s.degradation));
  return h;
}

std::string type_values(const std::vector<TypeScore>& scores) {
  std::string row;
  for (const auto& s : scores) row += "," + fmt(s.value);
  return row;
}

}  // namespace

std::string canonical_json(const Json& doc) { return doc.dump(2) + "\n"; }

Json score_json(const std::string& image, const QualityReport& q,
                const std::vector<std::string>& set_names, const std::string& model_id) {
  return Json{{"image", image},
              {"model_id", model_id},
              {"degradation_set_used", set_names},
              {"ddr", ddr_map(q.ddr)},
              {"q_ddr", number(q.q_ddr)}};
}

Json eval_json(const EvalResult& r) {
  Json per = Json::array();
  for (const auto& s : r.per_image) {
    per.push_back({{"path", s.path},
                   {"mos", number(s.mos)},
                   {"q_ddr", number(s.quality.q_ddr)},
                   {"ddr", ddr_map(s.quality.ddr)}});
  }
  Json failures = Json::array();
  for (const auto& f : r.failures) failures.push_back({{"path", f.path}, {"error", f.error}});
  return Json{{"dataset_id", r.dataset_id},
              {"srcc", number(r.srcc)},
              {"n_images", r.n_images},
              {"per_image", per},
              {"failures", failures},
              {"degradation_set_used", r.degradation_set_used},
              {"model_id", r.model_id}};
}

Json descriptor_json(const DescriptorTable& t) {
  Json rows = Json::array();
  for (const auto& row : t.rows) {
    rows.push_back({{"degradation", std::string(to_string(row.degradation))},
                    {"colorfulness", number(row.colorfulness)},
                    {"sharpness", number(row.sharpness)},
                    {"quality", number(row.quality)}});
  }
  Json failures = Json::array();
  for (const auto& f : t.failures) failures.push_back({{"path", f.path}, {"error", f.error}});
  return Json{{"dataset_id", t.dataset_id},
              {"n_images", t.n_images},
              {"columns", Json(std::vector<std::string>(std::begin(kDescriptorColumns),
                                                        std::end(kDescriptorColumns)))},
              {"rows", rows},
              {"failures", failures},
              {"model_id", t.model_id}};
}

Json objective_json(const ObjectiveResult& r, const std::string& restored,
                    const std::string& reference, const std::vector<std::string>& set_names,
                    const std::string& model_id) {
  return Json{{"restored", restored},
              {"reference", reference},
              {"psnr_db", number(r.psnr_db)},
              {"identical", r.identical},
              {"l_rec", number(r.l_rec)},
              {"l_rec_definition", "-psnr_db"},
              {"lambda_d", number(r.lambda_d)},
              {"ddr", ddr_map(r.ddr)},
              {"ddr_sum", number(r.ddr_sum)},
              {"objective", number(r.objective)},
              {"degradation_set_used", set_names},
              {"model_id", model_id}};
}

std::string score_csv(const std::string& image, const QualityReport& q) {
  return "path,q_ddr" + type_header(q.ddr) + "\n" + csv_field(image) + "," + fmt(q.q_ddr) +
         type_values(q.ddr) + "\n";
}

std::string eval_csv(const EvalResult& r) {
  std::string out = "path,mos,q_ddr";
  if (!r.per_image.empty()) out += type_header(r.per_image.front().quality.ddr);
  out += "\n";
  for (const auto& s : r.per_image) {
    out += csv_field(s.path) + "," + fmt(s.mos) + "," + fmt(s.quality.q_ddr) +
           type_values(s.quality.ddr) + "\n";
  }
  return out;
}

std::string descriptor_csv(const DescriptorTable& t) {
  std::string out = "degradation,colorfulness,sharpness,quality\n";
  for (const auto& row : t.rows) {
    out += std::string(to_string(row.degradation)) + "," + fmt(row.colorfulness) + "," +
           fmt(row.sharpness) + "," + fmt(row.quality) + "\n";
  }
  return out;
}

std::string objective_csv(const ObjectiveResult& r) {
  return "psnr_db,identical,l_rec,lambda_d,ddr_sum,objective" + type_header(r.ddr) + "\n" +
         fmt(r.psnr_db) + "," + (r.identical ? "true" : "false") + "," + fmt(r.l_rec) + "," +
         fmt(r.lambda_d) + "," + fmt(r.ddr_sum) + "," + fmt(r.objective) + type_values(r.ddr) +
         "\n";
}

}  // namespace ddr
