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

#include <random>
#include <vector>

#include "ddr/ddr.hpp"
#include "ddr/stats.hpp"

namespace {

std::vector<double> random_values(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = nd(rng);
  return v;
}

void BM_AdaptDirection(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ddr::FeatureVector t(random_values(n, 1)), f(random_values(n, 2));
  for (auto _ : state) benchmark::DoNotOptimize(ddr::adapt_direction(t, f));
}
BENCHMARK(BM_AdaptDirection)->Arg(512)->Arg(768);

void BM_DdrText(benchmark::State& state) {
  const ddr::FeatureVector f(random_values(512, 3));
  const ddr::DegradationDirection d{ddr::DegradationType::blur,
                                    ddr::FeatureVector(random_values(512, 4))};
  for (auto _ : state) benchmark::DoNotOptimize(ddr::ddr_text(f, d));
}
BENCHMARK(BM_DdrText);

void BM_QualityScore(benchmark::State& state) {
  const ddr::FeatureVector f(random_values(512, 5));
  std::vector<ddr::DegradationDirection> members;
  for (auto type : {ddr::DegradationType::color, ddr::DegradationType::noise,
                    ddr::DegradationType::blur, ddr::DegradationType::exposure}) {
    members.push_back({type, ddr::FeatureVector(random_values(512, members.size() + 10))});
  }
  const ddr::DegradationSet set(std::move(members));
  for (auto _ : state) benchmark::DoNotOptimize(ddr::quality_score(f, set));
}
BENCHMARK(BM_QualityScore);

void BM_Srcc(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = random_values(n, 6), y = random_values(n, 7);
  for (auto _ : state) benchmark::DoNotOptimize(ddr::srcc(x, y));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Srcc)->RangeMultiplier(4)->Range(64, 16384)->Complexity(benchmark::oNLogN);

}  // namespace
