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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <thread>

#include "ddr/ddr.hpp"
#include "ddr/encoders.hpp"
#include "ddr/error.hpp"
#include "ddr/image.hpp"
#include "ddr/preprocess.hpp"
#include "ddr/prompts.hpp"
#include "fixtures.hpp"

namespace ddr {
namespace {

namespace fs = std::filesystem;

// Cross-runtime agreement for float32 graphs.
constexpr double kRuntimeTolerance = 1e-5;

class StubEncoders : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { encoders_ = new Encoders(Encoders::load(testing::stub_assets_dir())); }
  static void TearDownTestSuite() {
    delete encoders_;
    encoders_ = nullptr;
  }
  static const Encoders& enc() { return *encoders_; }

 private:
  static Encoders* encoders_;
};

Encoders* StubEncoders::encoders_ = nullptr;

void expect_close(const FeatureVector& got, const nlohmann::json& want, double tol) {
  const auto ref = want.get<std::vector<double>>();
  ASSERT_EQ(got.size(), ref.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) worst = std::max(worst, std::abs(got[i] - ref[i]));
  EXPECT_LE(worst, tol);
}

TEST_F(StubEncoders, ManifestFields) {
  EXPECT_EQ(enc().assets.model_id, "stub-vit-b32-signature");
  EXPECT_EQ(enc().assets.embedding_dim, 512u);
  EXPECT_EQ(enc().image.embedding_dim(), 512u);
  EXPECT_EQ(enc().text.kind(), EncoderKind::text);
}

TEST_F(StubEncoders, ZeroTensorMatchesGolden) {
  const auto golden = testing::load_fixture("stub_golden.json");
  const FeatureVector f = encode_image(enc().image, PreprocessedTensor());
  EXPECT_EQ(f.source(), FeatureSource::image);
  expect_close(f, golden["image_zero"], kRuntimeTolerance);
}

TEST_F(StubEncoders, SineProbeMatchesGolden) {
  const auto golden = testing::load_fixture("stub_golden.json");
  std::vector<float> probe(PreprocessedTensor::kNumel);
  for (std::size_t i = 0; i < probe.size(); ++i) {
    probe[i] = static_cast<float>(2.0 * std::sin(static_cast<double>(i) * 0.001 + 0.5));
  }
  const FeatureVector f = encode_image(enc().image, PreprocessedTensor(probe));
  expect_close(f, golden["image_probe_sine"], kRuntimeTolerance);
}

TEST_F(StubEncoders, TextMatchesGolden) {
  const auto golden = testing::load_fixture("stub_golden.json");
  const auto& tok = *enc().tokenizer;
  expect_close(encode_text(enc().text, tok.tokenize("a")), golden["text_a"], kRuntimeTolerance);
  expect_close(encode_text(enc().text, tok.tokenize("A blurry photo with low-quality.")),
               golden["text_blur_degraded"], kRuntimeTolerance);
}

TEST_F(StubEncoders, EncodingIsBitwiseRepeatable) {
  const Image img = load_image(testing::fixture_images() / "scene_b.png");
  const PreprocessedTensor t = preprocess(img);
  EXPECT_EQ(encode_image(enc().image, t), encode_image(enc().image, t));
  const auto tok = enc().tokenizer->tokenize("A sharp photo with high-quality.");
  EXPECT_EQ(encode_text(enc().text, tok), encode_text(enc().text, tok));
}

TEST_F(StubEncoders, FixtureImageEmbeddingsMatchReference) {
  const auto ref = testing::load_fixture("reference_scores.json");
  for (const auto& rec : ref["images"]) {
    SCOPED_TRACE(rec["path"].get<std::string>());
    const Image img = load_image(testing::fixture_images() / rec["path"].get<std::string>());
    expect_close(encode_image(enc().image, preprocess(img)), rec["embedding"], kRuntimeTolerance);
  }
}

TEST_F(StubEncoders, KindMismatchIsSessionError) {
  EXPECT_THROW(encode_image(enc().text, PreprocessedTensor()), SessionError);
  EXPECT_THROW(encode_text(enc().image, enc().tokenizer->tokenize("a")), SessionError);
}

TEST_F(StubEncoders, BiqaSetBuildsFourDistinctDirections) {
  const DegradationSet set =
      build_degradation_set(default_prompt_pairs(biqa_degradations()), enc().text, *enc().tokenizer);
  ASSERT_EQ(set.size(), 4u);
  EXPECT_EQ(set.type_names(), (std::vector<std::string>{"color", "noise", "blur", "exposure"}));
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      EXPECT_FALSE(set.members()[i].direction == set.members()[j].direction);
    }
  }
}

TEST_F(StubEncoders, DirectionIsDegradedMinusClean) {
  const auto pair = default_prompt_pair(DegradationType::noise);
  const DegradationSet set = build_degradation_set({pair}, enc().text, *enc().tokenizer);
  const auto& tok = *enc().tokenizer;
  const FeatureVector expect = degradation_direction(encode_text(enc().text, tok.tokenize(pair.degraded_prompt)),
                                                     encode_text(enc().text, tok.tokenize(pair.clean_prompt)));
  EXPECT_EQ(set.members()[0].direction, expect);
}

TEST_F(StubEncoders, DuplicateTypeRejected) {
  const auto pair = default_prompt_pair(DegradationType::blur);
  EXPECT_THROW(build_degradation_set({pair, pair}, enc().text, *enc().tokenizer), ConfigError);
}

TEST_F(StubEncoders, IdenticalPromptsGiveDegenerateDirectionNamingType) {
  const PromptPair same{DegradationType::exposure, "A photo.", "A photo."};
  try {
    build_degradation_set({same}, enc().text, *enc().tokenizer);
    FAIL() << "expected DegenerateDirectionError";
  } catch (const DegenerateDirectionError& e) {
    EXPECT_NE(std::string(e.what()).find("exposure"), std::string::npos);
  }
}

TEST_F(StubEncoders, ConcurrentCallsAgree) {
  const PreprocessedTensor t = preprocess(load_image(testing::fixture_images() / "scene_a.png"));
  const FeatureVector want = encode_image(enc().image, t);
  std::vector<std::thread> pool;
  std::vector<int> ok(4, 0);
  for (int k = 0; k < 4; ++k) {
    pool.emplace_back([&, k] { ok[k] = encode_image(enc().image, t) == want ? 1 : 0; });
  }
  for (auto& th : pool) th.join();
  EXPECT_EQ(ok, (std::vector<int>{1, 1, 1, 1}));
}

// Builds a scratch copy of the stub assets for corruption tests.
class AssetCopy : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ddr_assets_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::copy(testing::stub_assets_dir(), dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(AssetCopy, IntactCopyOpens) { EXPECT_NO_THROW(ModelAssets::open(dir_)); }

TEST_F(AssetCopy, MissingDirectory) {
  EXPECT_THROW(ModelAssets::open(dir_ / "nope"), AssetError);
}

TEST_F(AssetCopy, MissingFile) {
  fs::remove(dir_ / kTextEncoderFile);
  EXPECT_THROW(ModelAssets::open(dir_), AssetError);
}

TEST_F(AssetCopy, HashMismatch) {
  std::ofstream(dir_ / kImageEncoderFile, std::ios::app | std::ios::binary) << 'x';
  try {
    ModelAssets::open(dir_);
    FAIL() << "expected AssetError";
  } catch (const AssetError& e) {
    EXPECT_NE(std::string(e.what()).find("digest mismatch"), std::string::npos);
  }
}

TEST_F(AssetCopy, WrongContextLength) {
  auto m = testing::load_json(dir_ / kManifestFile);
  m["context_length"] = 64;
  std::ofstream(dir_ / kManifestFile) << m.dump();
  EXPECT_THROW(ModelAssets::open(dir_), AssetError);
}

TEST(Sha256, KnownDigest) {
  const fs::path p = fs::temp_directory_path() / "ddr_sha_abc.txt";
  std::ofstream(p, std::ios::binary) << "abc";
  EXPECT_EQ(sha256_file(p), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  fs::remove(p);
}

TEST(EncoderSessionOpen, WrongKindSignatureRejected) {
  EXPECT_THROW(EncoderSession::open(testing::stub_assets_dir() / kImageEncoderFile, EncoderKind::text,
                                    "x", 512),
               SessionError);
  EXPECT_THROW(EncoderSession::open(testing::stub_assets_dir() / kTextEncoderFile, EncoderKind::text,
                                    "x", 256),
               SessionError);
}

}  // namespace
}  // namespace ddr
