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

// Paths and loaders for the committed test fixtures.

#ifndef DDR_TESTS_FIXTURES_HPP_
#define DDR_TESTS_FIXTURES_HPP_

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "ddr/features.hpp"

namespace ddr::testing {

inline std::filesystem::path fixture_dir() { return DDR_FIXTURE_DIR; }
inline std::filesystem::path stub_assets_dir() { return fixture_dir() / "stub_assets"; }
inline std::filesystem::path fixture_images() { return fixture_dir() / "images"; }

inline nlohmann::json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing fixture " + path.string());
  return nlohmann::json::parse(in);
}

inline nlohmann::json load_fixture(const std::string& name) {
  return load_json(fixture_dir() / name);
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("missing file " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline FeatureVector feature_from_json(const nlohmann::json& values) {
  return FeatureVector(values.get<std::vector<double>>());
}

}  // namespace ddr::testing

#endif  // DDR_TESTS_FIXTURES_HPP_
