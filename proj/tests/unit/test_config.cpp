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

#include <gtest/gtest.h>

#include <cstdlib>

#include "ddr/config.hpp"
#include "ddr/error.hpp"
#include "ddr/prompts.hpp"

namespace ddr {
namespace {

TEST(Config, EmptyDocumentGivesDefaults) {
  const Config c = parse_config("");
  EXPECT_FALSE(c.model_assets_dir.has_value());
  EXPECT_FALSE(c.set.has_value());
  EXPECT_EQ(c.lambda_d, 2.0);
  EXPECT_EQ(c.output_format, OutputFormat::json);
  EXPECT_EQ(c.parallelism, 1u);
  EXPECT_EQ(c.seed, 0u);
}

TEST(Config, ParsesEveryKey) {
  const Config c = parse_config(
      "model_assets_dir: assets/stub\n"
      "degradation_set: restoration\n"
      "lambda_d: 3.5\n"
      "output_format: csv\n"
      "parallelism: 0\n"
      "seed: 99\n",
      "/etc/ddr");
  EXPECT_EQ(*c.model_assets_dir, std::filesystem::path("/etc/ddr/assets/stub"));
  EXPECT_EQ(*c.set, SetChoice::restoration);
  EXPECT_EQ(c.lambda_d, 3.5);
  EXPECT_EQ(c.output_format, OutputFormat::csv);
  EXPECT_EQ(c.parallelism, 0u);
  EXPECT_EQ(c.seed, 99u);
}

TEST(Config, AbsoluteAssetsDirIsKept) {
  EXPECT_EQ(*parse_config("model_assets_dir: /opt/a\n", "/etc").model_assets_dir,
            std::filesystem::path("/opt/a"));
}

TEST(Config, CustomSetFromList) {
  const Config c = parse_config(
      "degradation_set:\n"
      "  - {type: noise, degraded: A grainy photo., clean: A clean photo.}\n"
      "  - type: blur\n"
      "    degraded: A soft photo.\n"
      "    clean: A crisp photo.\n");
  EXPECT_EQ(*c.set, SetChoice::custom);
  ASSERT_EQ(c.custom_pairs.size(), 2u);
  EXPECT_EQ(c.custom_pairs[0].degradation, DegradationType::noise);
  EXPECT_EQ(c.custom_pairs[0].degraded_prompt, "A grainy photo.");
  EXPECT_EQ(c.custom_pairs[1].clean_prompt, "A crisp photo.");
  const auto pairs = resolve_prompt_pairs(c, SetChoice::biqa);
  EXPECT_EQ(pairs.size(), 2u);
}

TEST(Config, RejectsInvalidDocuments) {
  for (const char* bad : {
           "unknown_key: 1\n",
           "lambda_d: -1\n",
           "lambda_d: .nan\n",
           "lambda_d: lots\n",
           "output_format: xml\n",
           "degradation_set: fancy\n",
           "degradation_set: custom\n",
           "degradation_set: []\n",
           "parallelism: -2\n",
           "seed: -1\n",
           "- just\n- a list\n",
           "key: [unclosed\n",
           "degradation_set:\n  - {type: noise, degraded: x}\n",
           "degradation_set:\n  - {type: smudge, degraded: x, clean: y}\n",
           "degradation_set:\n  - {type: noise, degraded: x, clean: y, extra: z}\n",
           "degradation_set:\n  - {type: noise, degraded: same, clean: same}\n",
           "degradation_set:\n  - {type: noise, degraded: '  ', clean: y}\n",
           "degradation_set:\n  - {type: noise, degraded: a, clean: b}\n"
           "  - {type: noise, degraded: c, clean: d}\n",
       }) {
    EXPECT_THROW(parse_config(bad), ConfigError) << bad;
  }
}

TEST(Config, DefaultSetChosenByCaller) {
  const Config c;
  EXPECT_EQ(resolve_prompt_pairs(c, SetChoice::biqa).size(), biqa_degradations().size());
  EXPECT_EQ(resolve_prompt_pairs(c, SetChoice::restoration).size(),
            restoration_degradations().size());
  EXPECT_THROW(resolve_prompt_pairs(c, SetChoice::custom), ConfigError);
  Config r;
  r.set = SetChoice::restoration;
  EXPECT_EQ(resolve_prompt_pairs(r, SetChoice::biqa)[1].degradation, DegradationType::content);
}

TEST(Config, AssetsDirFallsBackToEnvironment) {
  Config c;
  ::unsetenv(kAssetsEnvVar);
  EXPECT_THROW(resolve_assets_dir(c), AssetError);
  ::setenv(kAssetsEnvVar, "/from/env", 1);
  EXPECT_EQ(resolve_assets_dir(c), std::filesystem::path("/from/env"));
  c.model_assets_dir = "/from/config";
  EXPECT_EQ(resolve_assets_dir(c), std::filesystem::path("/from/config"));
  ::unsetenv(kAssetsEnvVar);
}

TEST(Config, NamesRoundTrip) {
  for (auto s : {SetChoice::biqa, SetChoice::restoration, SetChoice::custom}) {
    EXPECT_EQ(parse_set_choice(to_string(s)), s);
  }
  for (auto f : {OutputFormat::json, OutputFormat::csv}) {
    EXPECT_EQ(parse_output_format(to_string(f)), f);
  }
}

TEST(Config, MissingFileIsConfigError) {
  EXPECT_THROW(load_config("/nonexistent/ddr.yaml"), ConfigError);
}

}  // namespace
}  // namespace ddr
