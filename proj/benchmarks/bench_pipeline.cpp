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

#include <benchmark/benchmark.h>

#include <filesystem>

#include "ddr/degradations.hpp"
#include "ddr/encoders.hpp"
#include "ddr/image.hpp"
#include "ddr/metrics.hpp"
#include "ddr/preprocess.hpp"
#include "ddr/prompts.hpp"
#include "ddr/tokenizer.hpp"

namespace {

const std::filesystem::path kFixtures = DDR_FIXTURE_DIR;

const ddr::Image& probe() {
  static const ddr::Image img = ddr::load_image(kFixtures / "images" / "probe_448x336.png");
  return img;
}

const ddr::Encoders& stub() {
  static const ddr::Encoders enc = ddr::Encoders::load(kFixtures / "stub_assets");
  return enc;
}

void BM_Preprocess(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ddr::preprocess(probe()));
}
BENCHMARK(BM_Preprocess)->Unit(benchmark::kMicrosecond);

void BM_Tokenize(benchmark::State& state) {
  const auto& tok = *stub().tokenizer;
  const auto pair = ddr::default_prompt_pair(ddr::DegradationType::exposure);
  for (auto _ : state) benchmark::DoNotOptimize(tok.tokenize(pair.degraded_prompt));
}
BENCHMARK(BM_Tokenize);

void BM_EncodeImageStub(benchmark::State& state) {
  const auto tensor = ddr::preprocess(probe());
  for (auto _ : state) benchmark::DoNotOptimize(ddr::encode_image(stub().image, tensor));
}
BENCHMARK(BM_EncodeImageStub)->Unit(benchmark::kMicrosecond);

void BM_EncodeTextStub(benchmark::State& state) {
  const auto tokens = stub().tokenizer->tokenize("A blurry photo with low-quality.");
  for (auto _ : state) benchmark::DoNotOptimize(ddr::encode_text(stub().text, tokens));
}
BENCHMARK(BM_EncodeTextStub)->Unit(benchmark::kMicrosecond);

void BM_GaussianBlur(benchmark::State& state) {
  const ddr::DegradationSpec spec{ddr::DegradationKind::gaussian_blur,
                                  static_cast<double>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(ddr::apply(probe(), spec));
}
BENCHMARK(BM_GaussianBlur)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Ssim(benchmark::State& state) {
  const ddr::Image noisy = ddr::apply(probe(), {ddr::DegradationKind::gaussian_noise, 0.05, 1});
  for (auto _ : state) benchmark::DoNotOptimize(ddr::ssim(probe(), noisy));
}
BENCHMARK(BM_Ssim)->Unit(benchmark::kMillisecond);

}  // namespace
