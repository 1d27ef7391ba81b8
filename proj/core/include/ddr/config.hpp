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

// Run configuration read from a YAML document.
//
//   model_assets_dir: assets/clip-vit-b32   # relative to the config file
//   degradation_set: biqa                    # biqa | restoration | list
//   lambda_d: 2.0
//   output_format: json                      # json | csv
//   parallelism: 4                           # 0 = all hardware threads
//   seed: 0
//
// A custom set is a list of {type, degraded, clean} maps, where degraded and
// clean are full prompts. Every key is optional.

#ifndef DDR_CONFIG_HPP_
#define DDR_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ddr/features.hpp"

namespace ddr {

enum class OutputFormat { json, csv };
enum class SetChoice { biqa, restoration, custom };

std::string_view to_string(OutputFormat f) noexcept;
std::string_view to_string(SetChoice s) noexcept;
// Both throw ConfigError on unknown names.
OutputFormat parse_output_format(std::string_view name);
SetChoice parse_set_choice(std::string_view name);

inline constexpr const char* kAssetsEnvVar = "DDR_ASSETS_DIR";

struct Config {
  std::optional<std::filesystem::path> model_assets_dir;
  std::optional<SetChoice> set;  // unset: the command picks its default
  std::vector<PromptPair> custom_pairs;
  double lambda_d = 2.0;
  OutputFormat output_format = OutputFormat::json;
  std::size_t parallelism = 1;
  std::uint64_t seed = 0;

  // Throws ConfigError on any invalid field.
  void validate() const;
};

// Relative model_assets_dir values are resolved against `base_dir`.
Config parse_config(std::string_view yaml, const std::filesystem::path& base_dir = {});
Config load_config(const std::filesystem::path& path);

/// Prompt pairs for the chosen set, falling back to `default_set` when the
/// config does not choose. Throws ConfigError when custom is chosen without
/// pairs.
std::vector<PromptPair> resolve_prompt_pairs(const Config& config, SetChoice default_set);

/// The config's model_assets_dir, else $DDR_ASSETS_DIR. Throws AssetError
/// when neither is set.
std::filesystem::path resolve_assets_dir(const Config& config);

}  // namespace ddr

#endif  // DDR_CONFIG_HPP_
