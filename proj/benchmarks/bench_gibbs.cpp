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

#include <random>

#include "entis/gibbs.hpp"

namespace {

using namespace entis;

struct Instance {
  FiniteDistribution pi;
  Matrix table;
  Vector t0;
};

Instance make_instance(std::size_t atoms, std::size_t dim) {
  std::mt19937_64 gen(atoms * 31 + dim);
  std::exponential_distribution<double> e;
  std::normal_distribution<double> n;
  std::vector<double> w(atoms), v(atoms);
  for (std::size_t i = 0; i < atoms; ++i) {
    w[i] = e(gen);
    v[i] = e(gen);
  }
  Matrix t(static_cast<Eigen::Index>(atoms), static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    for (Eigen::Index j = 0; j < t.cols(); ++j) {
      t(i, j) = n(gen);
    }
  }
  const auto eta = FiniteDistribution::from_weights(v);
  Vector t0 = Vector::Zero(t.cols());
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    t0 += eta[static_cast<std::size_t>(i)] * t.row(i).transpose();
  }
  return {FiniteDistribution::from_weights(w), t, t0};
}

void BM_LogPartition(benchmark::State& state) {
  const auto inst = make_instance(static_cast<std::size_t>(state.range(0)), 3);
  const Vector beta = Vector::Constant(3, 0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_partition_finite(inst.pi, inst.table, beta));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LogPartition)->RangeMultiplier(10)->Range(10, 100000);

void BM_SolveLinearFamily(benchmark::State& state) {
  const auto inst = make_instance(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_linear_family(inst.pi, inst.table, inst.t0).beta);
  }
}
BENCHMARK(BM_SolveLinearFamily)->Args({10, 2})->Args({100, 3})->Args({1000, 5});

void BM_SolveBox(benchmark::State& state) {
  const auto inst = make_instance(50, 3);
  const auto set = ConvexMomentSet::box(inst.t0.array() - 0.05, inst.t0.array() + 0.05);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_convex_constraint(inst.pi, inst.table, set).beta);
  }
}
BENCHMARK(BM_SolveBox);

}  // namespace
