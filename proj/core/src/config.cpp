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

#include "ddr/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "ddr/error.hpp"
#include "ddr/prompts.hpp"

namespace ddr {

namespace fs = std::filesystem;

std::string_view to_string(OutputFormat f) noexcept {
  return f == OutputFormat::json ? "json" : "csv";
}

std::string_view to_string(SetChoice s) noexcept {
  switch (s) {
    case SetChoice::biqa: return "biqa";
    case SetChoice::restoration: return "restoration";
    case SetChoice::custom: return "custom";
  }
  return "?";
}

OutputFormat parse_output_format(std::string_view name) {
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  throw ConfigError("unknown output format '" + std::string(name) + "' (expected json or csv)");
}

SetChoice parse_set_choice(std::string_view name) {
  if (name == "biqa") return SetChoice::biqa;
  if (name == "restoration") return SetChoice::restoration;
  if (name == "custom") return SetChoice::custom;
  throw ConfigError("unknown degradation set '" + std::string(name) +
                    "' (expected biqa, restoration or custom)");
}

void Config::validate() const {
  if (!std::isfinite(lambda_d) || lambda_d < 0.0) {
    throw ConfigError("lambda_d must be a finite non-negative number");
  }
  std::set<DegradationType> seen;
  for (const auto& p : custom_pairs) {
    p.validate();
    if (p.degraded_prompt == p.clean_prompt) {
      throw ConfigError("prompt pair for '" + std::string(to_string(p.degradation)) +
                        "' uses the same text for both prompts");
    }
    if (!seen.insert(p.degradation).second) {
      throw ConfigError("degradation type '" + std::string(to_string(p.degradation)) +
                        "' listed twice");
    }
  }
}

namespace {

template <class T>
T scalar(const YAML::Node& node, const char* key) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(std::string("config key '") + key + "' has an invalid value");
  }
}

PromptPair parse_pair(const YAML::Node& item, std::size_t index) {
  const std::string where = "degradation_set[" + std::to_string(index) + "]";
  if (!item.IsMap()) throw ConfigError(where + " must be a map with type, degraded, clean");
  for (const auto& kv : item) {
    const auto key = kv.first.as<std::string>();
    if (key != "type" && key != "degraded" && key != "clean") {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
  for (const char* key : {"type", "degraded", "clean"}) {
    if (!item[key]) throw ConfigError(where + ": missing '" + key + "'");
  }
  PromptPair p{parse_degradation_type(scalar<std::string>(item["type"], "type")),
               scalar<std::string>(item["degraded"], "degraded"),
               scalar<std::string>(item["clean"], "clean")};
  return p;
}

}  // namespace

Config parse_config(std::string_view yaml, const fs::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml));
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config is not valid YAML: ") + e.what());
  }
  Config c;
  if (root.IsNull()) return c;
  if (!root.IsMap()) throw ConfigError("config must be a mapping of keys to values");

  static const std::set<std::string> known = {"model_assets_dir", "degradation_set", "lambda_d",
                                              "output_format", "parallelism", "seed"};
  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");
  }

  if (const auto n = root["model_assets_dir"]) {
    fs::path p = scalar<std::string>(n, "model_assets_dir");
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    c.model_assets_dir = p;
  }
  if (const auto n = root["degradation_set"]) {
    if (n.IsSequence()) {
      c.set = SetChoice::custom;
      for (std::size_t i = 0; i < n.size(); ++i) c.custom_pairs.push_back(parse_pair(n[i], i));
      if (c.custom_pairs.empty()) throw ConfigError("custom degradation_set is empty");
    } else {
      c.set = parse_set_choice(scalar<std::string>(n, "degradation_set"));
      if (c.set == SetChoice::custom) {
        throw ConfigError("degradation_set: custom needs a list of prompt pairs");
      }
    }
  }
  if (const auto n = root["lambda_d"]) c.lambda_d = scalar<double>(n, "lambda_d");
  if (const auto n = root["output_format"]) {
    c.output_format = parse_output_format(scalar<std::string>(n, "output_format"));
  }
  if (const auto n = root["parallelism"]) {
    const auto v = scalar<long long>(n, "parallelism");
    if (v < 0) throw ConfigError("parallelism must be >= 0");
    c.parallelism = static_cast<std::size_t>(v);
  }
  if (const auto n = root["seed"]) c.seed = scalar<std::uint64_t>(n, "seed");
  c.validate();
  return c;
}

Config load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path());
}

std::vector<PromptPair> resolve_prompt_pairs(const Config& config, SetChoice default_set) {
  switch (config.set.value_or(default_set)) {
    case SetChoice::biqa: return default_prompt_pairs(biqa_degradations());
    case SetChoice::restoration: return default_prompt_pairs(restoration_degradations());
    case SetChoice::custom:
      if (config.custom_pairs.empty()) {
        throw ConfigError("custom degradation set chosen but the config lists no prompt pairs");
      }
      return config.custom_pairs;
  }
  throw ConfigError("unknown degradation set");
}

fs::path resolve_assets_dir(const Config& config) {
  if (config.model_assets_dir) return *config.model_assets_dir;
  if (const char* env = std::getenv(kAssetsEnvVar); env != nullptr && *env != '\0') {
    return fs::path(env);
  }
  throw AssetError(std::string("no model assets directory; pass --assets, set "
                               "model_assets_dir in the config or export ") +
                   kAssetsEnvVar);
}

}  // namespace ddr
