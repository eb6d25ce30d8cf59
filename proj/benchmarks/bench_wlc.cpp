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

#include <cmath>

#include "entis/wlc.hpp"

namespace {

using namespace entis;

void BM_WlcValueGrid(benchmark::State& state) {
  const FiniteDistribution pi({0.2, 0.3, 0.5});
  const FiniteDistribution mu({0.4, 0.3, 0.3});
  const WlcProblem problem{pi, std::nullopt, 0.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(wlc_value_grid(problem, mu, static_cast<int>(state.range(0))).value);
  }
}
BENCHMARK(BM_WlcValueGrid)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_WlcArgminTwoAtom(benchmark::State& state) {
  const WlcProblem problem{FiniteDistribution({0.7, 0.3}), std::nullopt, 0.7};
  for (auto _ : state) {
    benchmark::DoNotOptimize(wlc_argmin_grid(problem).wlc_value);
  }
}
BENCHMARK(BM_WlcArgminTwoAtom)->Unit(benchmark::kMillisecond);

void BM_StripTarget(benchmark::State& state) {
  const auto f = [](double x, double y) { return std::sin(6 * x) * y + x * y * y; };
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_strip_target(f, 1.0, static_cast<int>(state.range(0))).achieved_entropy);
  }
}
BENCHMARK(BM_StripTarget)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace
