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

#include "ddr/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "ddr/ddr.hpp"
#include "ddr/error.hpp"
#include "ddr/metrics.hpp"
#include "ddr/preprocess.hpp"
#include "ddr/stats.hpp"

namespace ddr {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Strips one level of double quotes, unescaping doubled quotes.
std::string unquote(std::string_view s) {
  if (s.size() < 2 || s.front() != '"' || s.back() != '"') return std::string(s);
  std::string out;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    out += s[i];
    if (s[i] == '"' && s[i + 1] == '"') ++i;
  }
  return out;
}

}  // namespace

DatasetManifest DatasetManifest::parse(std::string_view text, fs::path base_dir,
                                       std::string dataset_id) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  DatasetManifest m;
  m.dataset_id = std::move(dataset_id);
  m.base_dir = std::move(base_dir);

  std::set<std::string> seen;
  bool header = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const std::string where = "manifest line " + std::to_string(line_no);
    if (!header) {
      if (line != "path,mos") throw DataError(where + ": expected header 'path,mos'");
      header = true;
      continue;
    }
    // The MOS never contains a comma, so split on the last one.
    const auto comma = line.rfind(',');
    if (comma == std::string_view::npos) throw DataError(where + ": expected 'path,mos'");
    const std::string path = unquote(trim(line.substr(0, comma)));
    const std::string_view mos_text = trim(line.substr(comma + 1));
    if (path.empty()) throw DataError(where + ": empty path");
    double mos = 0.0;
    const auto [end, ec] = std::from_chars(mos_text.data(), mos_text.data() + mos_text.size(), mos);
    if (ec != std::errc{} || end != mos_text.data() + mos_text.size() || !std::isfinite(mos)) {
      throw DataError(where + ": MOS '" + std::string(mos_text) + "' is not a finite number");
    }
    if (!seen.insert(path).second) throw DataError(where + ": duplicate path '" + path + "'");
    m.records.push_back({path, mos});
  }
  if (!header) throw DataError("manifest is empty; expected header 'path,mos'");
  return m;
}

DatasetManifest DatasetManifest::load(const fs::path& csv) {
  std::ifstream in(csv, std::ios::binary);
  if (!in) throw DataError("cannot read manifest " + csv.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const fs::path base = csv.parent_path();
  const fs::path abs = fs::absolute(csv).lexically_normal();
  std::string id = abs.parent_path().filename().string();
  if (id.empty()) id = csv.stem().string();
  return parse(buf.str(), base, id);
}

QualityReport score_embedding(const FeatureVector& image, const DegradationSet& set) {
  QualityReport r;
  r.ddr.reserve(set.size());
  for (const auto& d : set) r.ddr.push_back({d.degradation, ddr_text(image, d)});
  r.q_ddr = quality_score(image, set);
  return r;
}

QualityReport score_image(const Image& img, const EncoderSession& image_session,
                          const DegradationSet& set) {
  return score_embedding(encode_image(image_session, preprocess(img)), set);
}

void parallel_for(std::size_t n, std::size_t parallelism,
                  const std::function<void(std::size_t)>& body) {
  if (parallelism == 0) parallelism = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min(parallelism, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto run = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        const std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

namespace {

struct Scored {
  bool ok = false;
  std::string error;
  QualityReport quality;
  double colorfulness = 0.0;
  double sharpness = 0.0;
};

// Scores every record into a slot of its own; failures stay per record.
std::vector<Scored> score_records(const DatasetManifest& manifest, const DegradationSet& set,
                                  const EncoderSession& session, const EvalOptions& options,
                                  bool descriptors) {
  std::vector<Scored> out(manifest.records.size());
  parallel_for(out.size(), options.parallelism, [&](std::size_t i) {
    Scored& s = out[i];
    try {
      const Image img = load_image(manifest.resolve(manifest.records[i]));
      if (descriptors) {
        s.colorfulness = colorfulness(img);
        s.sharpness = sharpness_proxy(img);
      }
      s.quality = score_image(img, session, set);
      s.ok = true;
    } catch (const DataError& e) {
      s.error = e.what();
    } catch (const DegenerateInputError& e) {
      s.error = e.what();
    }
  });
  return out;
}

void require_two(std::size_t valid, std::size_t total) {
  if (valid < 2) {
    throw DataError("only " + std::to_string(valid) + " of " + std::to_string(total) +
                    " records could be scored; at least 2 are needed");
  }
}

}  // namespace

EvalResult evaluate_biqa(const DatasetManifest& manifest, const DegradationSet& set,
                         const EncoderSession& image_session, const EvalOptions& options) {
  const auto scored = score_records(manifest, set, image_session, options, false);
  EvalResult r;
  r.dataset_id = manifest.dataset_id;
  r.degradation_set_used = set.type_names();
  r.model_id = image_session.model_id();
  std::vector<double> q, mos;
  for (std::size_t i = 0; i < scored.size(); ++i) {
    const auto& rec = manifest.records[i];
    if (!scored[i].ok) {
      r.failures.push_back({rec.path, scored[i].error});
      continue;
    }
    r.per_image.push_back({rec.path, rec.mos, scored[i].quality});
    q.push_back(scored[i].quality.q_ddr);
    mos.push_back(rec.mos);
  }
  r.n_images = r.per_image.size();
  require_two(r.n_images, manifest.records.size());
  r.srcc = srcc(q, mos);
  return r;
}

DescriptorTable correlate_descriptors(const DatasetManifest& manifest, const DegradationSet& set,
                                      const EncoderSession& image_session,
                                      const EvalOptions& options) {
  const auto scored = score_records(manifest, set, image_session, options, true);
  DescriptorTable t;
  t.dataset_id = manifest.dataset_id;
  t.model_id = image_session.model_id();
  std::vector<double> color, sharp, mos;
  std::vector<std::vector<double>> per_type(set.size());
  for (std::size_t i = 0; i < scored.size(); ++i) {
    if (!scored[i].ok) {
      t.failures.push_back({manifest.records[i].path, scored[i].error});
      continue;
    }
    color.push_back(scored[i].colorfulness);
    sharp.push_back(scored[i].sharpness);
    mos.push_back(manifest.records[i].mos);
    for (std::size_t k = 0; k < set.size(); ++k) {
      per_type[k].push_back(scored[i].quality.ddr[k].value);
    }
  }
  t.n_images = mos.size();
  require_two(t.n_images, manifest.records.size());
  for (std::size_t k = 0; k < set.size(); ++k) {
    const auto& d = per_type[k];
    t.rows.push_back({set.members()[k].degradation, srcc(d, color), srcc(d, sharp), srcc(d, mos)});
  }
  return t;
}

double combine_objective(double l_rec, double lambda_d, std::span<const double> ddr) {
  if (!std::isfinite(lambda_d) || lambda_d < 0.0) {
    throw ConfigError("lambda_d must be a finite non-negative number");
  }
  double sum = 0.0;
  for (double v : ddr) sum += v;
  return l_rec - lambda_d * sum;
}

ObjectiveResult ddr_objective(const Image& restored, const Image& gt, const DegradationSet& set,
                              double lambda_d, const EncoderSession& image_session) {
  const PsnrResult p = psnr(restored, gt);
  ObjectiveResult r;
  r.psnr_db = p.db;
  r.identical = p.identical;
  r.l_rec = -p.db;
  r.lambda_d = lambda_d;
  const QualityReport q = score_image(restored, image_session, set);
  r.ddr = q.ddr;
  std::vector<double> terms;
  for (const auto& t : q.ddr) terms.push_back(t.value);
  for (double v : terms) r.ddr_sum += v;
  r.objective = combine_objective(r.l_rec, lambda_d, terms);
  return r;
}

}  // namespace ddr
