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

#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "ddr/error.hpp"

namespace {

void add_common(CLI::App& app, ddr::cli::CommonOptions& o) {
  app.add_option("--assets", o.assets, "Model asset directory (else $DDR_ASSETS_DIR)");
  app.add_option("--config", o.config, "YAML run configuration")->check(CLI::ExistingFile);
  app.add_option("--set", o.set, "Degradation set")
      ->check(CLI::IsMember({"biqa", "restoration", "custom"}));
  app.add_option("--lambda-d", o.lambda_d, "Weight of the DDR term in the objective");
  app.add_option("--out", o.out, "Write the report here instead of stdout");
  app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--parallelism", o.parallelism, "Worker threads (0 = all cores)");
  app.add_option("--seed", o.seed, "Seed for noise degradations without one");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace ddr::cli;

  CLI::App app{"Deep degradation response toolkit"};
  app.set_version_flag("--version", DDR_VERSION);
  app.require_subcommand(1);

  CommonOptions opts;
  std::string image, manifest, restored, gt, out_dir;
  std::optional<std::string> spec, ladder;

  auto* score = app.add_subcommand("score", "Score one image");
  score->add_option("image", image, "Image file")->required();
  add_common(*score, opts);

  auto* eval = app.add_subcommand("eval", "Correlate scores with MOS over a dataset");
  eval->add_option("manifest", manifest, "CSV with columns path,mos")->required();
  add_common(*eval, opts);

  auto* degrade = app.add_subcommand("degrade", "Write degraded copies of an image");
  degrade->add_option("image", image, "Image file")->required();
  auto* spec_opt = degrade->add_option("--spec", spec, "kind:level[:seed]");
  degrade->add_option("--ladder", ladder, "kind:l0,l1,...[:seed]")->excludes(spec_opt);
  degrade->add_option("--out-dir", out_dir, "Directory for the PNG files")->required();
  add_common(*degrade, opts);

  auto* correlate = app.add_subcommand("correlate", "Correlate per-type responses with descriptors");
  correlate->add_option("manifest", manifest, "CSV with columns path,mos")->required();
  add_common(*correlate, opts);

  auto* objective = app.add_subcommand("objective", "Restoration objective for one image pair");
  objective->add_option("restored", restored, "Restored image")->required();
  objective->add_option("reference", gt, "Ground-truth image")->required();
  add_common(*objective, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*score) return cmd_score(opts, image);
    if (*eval) return cmd_eval(opts, manifest);
    if (*degrade) return cmd_degrade(opts, image, spec, ladder, out_dir);
    if (*correlate) return cmd_correlate(opts, manifest);
    if (*objective) return cmd_objective(opts, restored, gt);
  } catch (const ddr::AssetError& e) {
    std::cerr << "ddr: asset error: " << e.what() << "\n";
    return kExitAssets;
  } catch (const ddr::SessionError& e) {
    std::cerr << "ddr: asset error: " << e.what() << "\n";
    return kExitAssets;
  } catch (const ddr::DataError& e) {
    std::cerr << "ddr: data error: " << e.what() << "\n";
    return kExitData;
  } catch (const ddr::DimensionError& e) {
    std::cerr << "ddr: data error: " << e.what() << "\n";
    return kExitData;
  } catch (const ddr::UndefinedCorrelationError& e) {
    std::cerr << "ddr: data error: " << e.what() << "\n";
    return kExitData;
  } catch (const ddr::Error& e) {
    std::cerr << "ddr: error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
