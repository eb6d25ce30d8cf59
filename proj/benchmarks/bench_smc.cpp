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

#include "entis/smc.hpp"

namespace {

using namespace entis;

void BM_SmcGaussian(benchmark::State& state) {
  const GaussianModel pi(0.0, 1.0);
  const auto stat = Statistic::identity(1);
  SmcConfig cfg;
  cfg.particle_count = static_cast<std::size_t>(state.range(0));
  cfg.move_kernel = std::make_shared<RandomWalkKernel>();
  std::uint64_t seed = 0;
  for (auto _ : state) {
    Rng rng(seed++);
    benchmark::DoNotOptimize(run_smc(pi, stat, Vector::Constant(1, 1.0), cfg, rng).log_z_estimate);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SmcGaussian)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_SystematicResample(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 1.0 + static_cast<double>(i % 7);
  }
  Rng rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(systematic_indices(w, n, rng));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SystematicResample)->Arg(1000)->Arg(100000);

}  // namespace
