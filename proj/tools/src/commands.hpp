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

#ifndef DDR_TOOLS_COMMANDS_HPP_
#define DDR_TOOLS_COMMANDS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ddr::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitAssets = 2;
inline constexpr int kExitData = 3;

// Flags shared by every subcommand. Unset values fall back to the config
// file, then to built-in defaults.
struct CommonOptions {
  std::optional<std::string> assets;
  std::optional<std::string> config;
  std::optional<std::string> set;
  std::optional<double> lambda_d;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::size_t> parallelism;
  std::optional<std::uint64_t> seed;
};

int cmd_score(const CommonOptions& opts, const std::string& image);
int cmd_eval(const CommonOptions& opts, const std::string& manifest);
int cmd_degrade(const CommonOptions& opts, const std::string& image,
                const std::optional<std::string>& spec, const std::optional<std::string>& ladder,
                const std::string& out_dir);
int cmd_correlate(const CommonOptions& opts, const std::string& manifest);
int cmd_objective(const CommonOptions& opts, const std::string& restored, const std::string& gt);

}  // namespace ddr::cli

#endif  // DDR_TOOLS_COMMANDS_HPP_
