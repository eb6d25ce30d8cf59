// Copyright 2026 The entis Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "entis/bounds.hpp"

namespace {

using namespace entis;

void BM_ThreePointSlack(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(three_point_report(ThreePointParams{}).slack_r);
  }
}
BENCHMARK(BM_ThreePointSlack);

void BM_DominanceSweep(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(dominance_sweep().size());
  }
}
BENCHMARK(BM_DominanceSweep);

void BM_SampleMean(benchmark::State& state) {
  const auto y = DiscreteY::three_point(ThreePointParams{});
  Rng rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(y.sample_mean(static_cast<std::uint64_t>(state.range(0)), rng));
  }
}
BENCHMARK(BM_SampleMean)->Arg(1000)->Arg(100000000);

}  // namespace
