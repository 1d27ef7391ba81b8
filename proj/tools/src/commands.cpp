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

#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "ddr/config.hpp"
#include "ddr/degradations.hpp"
#include "ddr/encoders.hpp"
#include "ddr/error.hpp"
#include "ddr/harness.hpp"
#include "ddr/image.hpp"
#include "ddr/report.hpp"

namespace ddr::cli {
namespace {

namespace fs = std::filesystem;

Config effective_config(const CommonOptions& opts) {
  Config c = opts.config ? load_config(*opts.config) : Config{};
  if (opts.assets) c.model_assets_dir = fs::path(*opts.assets);
  if (opts.set) c.set = parse_set_choice(*opts.set);
  if (opts.lambda_d) c.lambda_d = *opts.lambda_d;
  if (opts.format) c.output_format = parse_output_format(*opts.format);
  if (opts.parallelism) c.parallelism = *opts.parallelism;
  if (opts.seed) c.seed = *opts.seed;
  c.validate();
  return c;
}

void emit(const CommonOptions& opts, const std::string& text) {
  if (!opts.out) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(*opts.out, std::ios::binary);
  out << text;
  if (!out.flush()) throw DataError("cannot write " + *opts.out);
}

struct Session {
  Encoders encoders;
  DegradationSet set;
  std::vector<std::string> set_names;
};

Session open_session(const Config& config, SetChoice default_set) {
  // Resolve prompts first so a bad set is reported before assets load.
  const auto pairs = resolve_prompt_pairs(config, default_set);
  Encoders enc = Encoders::load(resolve_assets_dir(config));
  DegradationSet set = build_degradation_set(pairs, enc.text, *enc.tokenizer);
  auto names = set.type_names();
  return {std::move(enc), std::move(set), std::move(names)};
}

std::string level_text(double level) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, level);
  return std::string(buf, res.ptr);
}

}  // namespace

int cmd_score(const CommonOptions& opts, const std::string& image) {
  const Config config = effective_config(opts);
  const Session s = open_session(config, SetChoice::biqa);
  const QualityReport q = score_image(load_image(image), s.encoders.image, s.set);
  emit(opts, config.output_format == OutputFormat::json
                 ? canonical_json(score_json(image, q, s.set_names, s.encoders.assets.model_id))
                 : score_csv(image, q));
  return kExitOk;
}

int cmd_eval(const CommonOptions& opts, const std::string& manifest_path) {
  const Config config = effective_config(opts);
  const Session s = open_session(config, SetChoice::biqa);
  const DatasetManifest manifest = DatasetManifest::load(manifest_path);
  const EvalResult r = evaluate_biqa(manifest, s.set, s.encoders.image, {config.parallelism});
  emit(opts, config.output_format == OutputFormat::json ? canonical_json(eval_json(r))
                                                        : eval_csv(r));
  const std::size_t total = manifest.records.size();
  if (r.failures.size() * 10 > total) {
    std::cerr << "ddr: " << r.failures.size() << " of " << total
              << " records failed (more than 10%)\n";
    return kExitData;
  }
  return kExitOk;
}

int cmd_degrade(const CommonOptions& opts, const std::string& image,
                const std::optional<std::string>& spec_text,
                const std::optional<std::string>& ladder_text, const std::string& out_dir) {
  const Config config = effective_config(opts);
  if (spec_text.has_value() == ladder_text.has_value()) {
    throw ConfigError("degrade needs exactly one of --spec or --ladder");
  }
  // A seed written into the spec wins over --seed / the config.
  const std::string& text = spec_text ? *spec_text : *ladder_text;
  const bool explicit_seed = std::count(text.begin(), text.end(), ':') == 2;

  DegradationKind kind{};
  std::vector<double> levels;
  std::uint64_t seed = config.seed;
  if (spec_text) {
    const DegradationSpec spec = parse_degradation_spec(*spec_text);
    kind = spec.kind;
    levels = {spec.level};
    if (explicit_seed) seed = spec.seed;
  } else {
    const LadderSpec spec = parse_ladder_spec(*ladder_text);
    kind = spec.kind;
    levels = spec.levels;
    if (explicit_seed) seed = spec.seed;
  }

  const Image img = load_image(image);
  const auto rungs = spec_text ? std::vector<Image>{apply(img, {kind, levels[0], seed})}
                               : ladder(img, kind, levels, seed);

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw DataError("cannot create " + out_dir + ": " + ec.message());
  const std::string stem = fs::path(image).stem().string();
  Json files = Json::array();
  std::string csv = "path,kind,level,seed\n";
  for (std::size_t i = 0; i < rungs.size(); ++i) {
    const fs::path path = fs::path(out_dir) / (stem + "__" + std::string(to_string(kind)) + "_" +
                                               level_text(levels[i]) + ".png");
    save_png(rungs[i], path);
    files.push_back({{"path", path.string()},
                     {"kind", std::string(to_string(kind))},
                     {"level", levels[i]},
                     {"seed", seed}});
    csv += path.string() + "," + std::string(to_string(kind)) + "," + level_text(levels[i]) +
           "," + std::to_string(seed) + "\n";
  }
  emit(opts, config.output_format == OutputFormat::json
                 ? canonical_json(Json{{"image", image}, {"outputs", files}})
                 : csv);
  return kExitOk;
}

int cmd_correlate(const CommonOptions& opts, const std::string& manifest_path) {
  const Config config = effective_config(opts);
  const Session s = open_session(config, SetChoice::biqa);
  const DatasetManifest manifest = DatasetManifest::load(manifest_path);
  const DescriptorTable t =
      correlate_descriptors(manifest, s.set, s.encoders.image, {config.parallelism});
  emit(opts, config.output_format == OutputFormat::json ? canonical_json(descriptor_json(t))
                                                        : descriptor_csv(t));
  return kExitOk;
}

int cmd_objective(const CommonOptions& opts, const std::string& restored,
                  const std::string& gt) {
  const Config config = effective_config(opts);
  const Session s = open_session(config, SetChoice::restoration);
  const ObjectiveResult r =
      ddr_objective(load_image(restored), load_image(gt), s.set, config.lambda_d, s.encoders.image);
  emit(opts, config.output_format == OutputFormat::json
                 ? canonical_json(objective_json(r, restored, gt, s.set_names,
                                                 s.encoders.assets.model_id))
                 : objective_csv(r));
  return kExitOk;
}

}  // namespace ddr::cli
