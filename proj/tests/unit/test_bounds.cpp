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

#include <gmock/gmock.h>

#include <cmath>

#include "entis/bounds.hpp"
#include "entis/entropy.hpp"
#include "entis/errors.hpp"
#include "oracles.hpp"

namespace {

using namespace entis;
using entis::testing::oracle_grid_min;
using entis::testing::oracle_renyi;
using entis::testing::oracle_two_atom_deviation;

TEST(CConstant, HandComputed) {
  EXPECT_NEAR(c_constant(0.5, 0.5), 20736.0, 1e-9);
  EXPECT_NEAR(c_constant(0.1, 0.1), 8.1e9, 1.0);
  EXPECT_THROW((void)c_constant(0.0, 0.5), Error);
  EXPECT_THROW((void)c_constant(0.5, 1.0), Error);
}

TEST(BoundVariant, NamesRoundTrip) {
  for (const auto v : {BoundVariant::kSingleGap, BoundVariant::kDoubleGap}) {
    EXPECT_EQ(bound_variant_from_string(to_string(v)), v);
  }
  EXPECT_THROW((void)bound_variant_from_string("other"), Error);
}

TEST(SlackR, ThreePointMatchesFineGrid) {
  const ThreePointParams p;
  const auto [eta, mu] = three_point_distributions(p);
  const double c = c_constant(0.5, 0.5);
  for (const auto variant : {BoundVariant::kSingleGap, BoundVariant::kDoubleGap}) {
    const double k = variant == BoundVariant::kSingleGap ? 1.0 : 2.0;
    const auto s = slack_r(RenyiProfile::finite(eta, mu), c, variant);
    const auto oracle = oracle_grid_min(
        [&](double th) {
          return k * (oracle_renyi(eta.probs(), mu.probs(), 1 + th) - oracle_renyi(eta.probs(), mu.probs(), 1 - th)) +
                 std::log(c) / th;
        },
        1e-4, 1.0, 200000);
    EXPECT_NEAR(s.slack_r, oracle.second, 1e-6);
    EXPECT_LE(s.slack_r, oracle.second + 1e-12);
    EXPECT_NEAR(s.theta_star, oracle.first, 1e-3);
  }
}

TEST(SlackR, TabulatedProfileAgreesAtGridOrders) {
  const FiniteDistribution eta({0.1, 0.9}), mu({0.5, 0.5});
  std::vector<double> orders;
  for (int i = 0; i <= 200; ++i) {
    orders.push_back(i / 100.0);
  }
  const auto rep = entropy_report_finite(eta, mu, orders);
  const auto tab = slack_r(rep, c_constant(0.5, 0.5), BoundVariant::kSingleGap);
  const auto exact = slack_r(RenyiProfile::finite(eta, mu), c_constant(0.5, 0.5), BoundVariant::kSingleGap);
  EXPECT_NEAR(tab.slack_r, exact.slack_r, 1e-3);
  EntropyReport empty;
  EXPECT_THROW((void)slack_r(empty, 2.0, BoundVariant::kSingleGap), Error);
}

TEST(BoundReport, IntervalIsEntPlusMinusSlack) {
  const FiniteDistribution eta({0.2, 0.8}), mu({0.5, 0.5});
  const auto b = bound_report(eta, mu, c_constant(0.5, 0.5), BoundVariant::kDoubleGap);
  EXPECT_NEAR(b.ent, relative_entropy_finite(eta, mu), 1e-15);
  EXPECT_EQ(b.ln_nstar_interval.first, b.ent - b.slack_r);
  EXPECT_EQ(b.ln_nstar_interval.second, b.ent + b.slack_r);
  EXPECT_GE(b.slack_r, std::log(b.c_constant));
}

TEST(ThreePoint, ClosedFormValues) {
  const auto rep = three_point_report(ThreePointParams{});
  EXPECT_NEAR(rep.ent, 0.01 * std::log(1e6) + 0.99 * std::log(100.0), 1e-10);
  EXPECT_NEAR(rep.ent, 4.697, 1e-3);
  EXPECT_NEAR(rep.ln_var, 9.220, 1e-3);
  EXPECT_NEAR(rep.gap, 4.52, 0.01);
  const auto [eta, mu] = three_point_distributions(ThreePointParams{});
  EXPECT_NEAR(rep.ent, relative_entropy_finite(eta, mu), 1e-12);
  EXPECT_NEAR(rep.regime_ratio, 0.01 / std::pow(1e-4, 0.99), 1e-9);
}

TEST(ThreePoint, InvalidParameters) {
  ThreePointParams p;
  p.l1 = 1.0;
  EXPECT_THROW(p.validate(), Error);
  p = ThreePointParams{};
  p.alpha = 1.0;
  EXPECT_THROW(p.validate(), Error);
}

TEST(ThreePoint, DominanceSweepIncreases) {
  const auto sweep = dominance_sweep();
  ASSERT_EQ(sweep.size(), 9u);
  for (std::size_t i = 1; i < sweep.size(); ++i) {
    EXPECT_GT(sweep[i].dominance_ratio, sweep[i - 1].dominance_ratio);
  }
  const auto p = dominance_params(8);
  EXPECT_NEAR(p.l1, 1e8, 1e-3);
  EXPECT_NEAR(p.r, 1e-4, 1e-18);
  EXPECT_NEAR(p.alpha, 1e-2, 1e-17);
}

TEST(DiscreteY, RequiresUnitMean) {
  EXPECT_THROW(DiscreteY({1.0, 2.0}, {0.5, 0.5}), Error);
  const auto y = DiscreteY::two_atom(1e-3);
  const auto [eta, mu] = y.distributions();
  EXPECT_NEAR(eta[1], 1.0, 1e-15);
  EXPECT_NEAR(mu[1], 1e-3, 1e-18);
}

TEST(DiscreteY, SampleMeanIsUnbiased) {
  const auto y = DiscreteY::two_atom(0.1);
  Rng rng(1);
  double sum = 0.0;
  const int m = 20000;
  for (int i = 0; i < m; ++i) {
    sum += y.sample_mean(50, rng);
  }
  // Var of the sample mean is (1/ε − 1)/N.
  EXPECT_NEAR(sum / m, 1.0, 4.0 * std::sqrt(9.0 / 50 / m));
}

TEST(DiscreteY, DeviationFrequencyMatchesBinomialTail) {
  const double eps = 1e-3;
  const auto y = DiscreteY::two_atom(eps);
  Rng rng(2);
  // δ = 0.43 keeps k/(Nε) away from the deviation boundary, where rounding decides ties.
  for (const std::uint64_t n : {500ULL, 2000ULL, 8000ULL, 20000ULL}) {
    const double p = oracle_two_atom_deviation(n, eps, 0.43);
    int hits = 0;
    const int m = 20000;
    for (int i = 0; i < m; ++i) {
      hits += std::fabs(y.sample_mean(n, rng) - 1.0) >= 0.43 ? 1 : 0;
    }
    EXPECT_NEAR(hits / double(m), p, 4.0 * std::sqrt(p * (1 - p) / m) + 1e-4);
  }
}

TEST(Isotonic, PoolsViolators) {
  const std::vector<double> v{0.9, 1.0, 0.5, 0.6, 0.1};
  const auto out = isotonic_decreasing(v);
  EXPECT_THAT(out, ::testing::ElementsAre(0.95, 0.95, 0.55, 0.55, 0.1));
}

TEST(LogSpacedGrid, EndpointsAndUniqueness) {
  const auto g = log_spaced_grid(1, 1e8, 49);
  EXPECT_EQ(g.front(), 1u);
  EXPECT_EQ(g.back(), 100000000u);
  for (std::size_t i = 1; i < g.size(); ++i) {
    EXPECT_GT(g[i], g[i - 1]);
  }
}

TEST(CriticalN, TwoAtomInsideBoundAndMatchesExactCrossing) {
  const double eps = 1e-3;
  const auto y = DiscreteY::two_atom(eps);
  DeviationProbeConfig cfg;
  cfg.replications = 2000;
  cfg.n_grid = log_spaced_grid(10, 1e6, 41);
  Rng rng(3);
  const auto res = empirical_critical_n(y, cfg, rng);
  ASSERT_FALSE(res.no_deviation_ever);
  const auto [eta, mu] = y.distributions();
  const auto b = bound_report(eta, mu, c_constant(cfg.delta, cfg.p_alpha), BoundVariant::kSingleGap);
  const double ln_n = std::log(res.n_star);
  EXPECT_GE(ln_n, b.ln_nstar_interval.first);
  EXPECT_LE(ln_n, b.ln_nstar_interval.second);
  EXPECT_LE(res.ci_low, res.n_star);
  EXPECT_GE(res.ci_high, res.n_star);
  // Exact crossing of the binomial tail, bracketed on the grid.
  std::size_t i = 0;
  while (i < cfg.n_grid.size() && oracle_two_atom_deviation(cfg.n_grid[i], eps, cfg.delta) > cfg.p_alpha) {
    ++i;
  }
  ASSERT_GT(i, 0u);
  ASSERT_LT(i, cfg.n_grid.size());
  EXPECT_GE(res.n_star, 0.5 * static_cast<double>(cfg.n_grid[i - 1]));
  EXPECT_LE(res.n_star, 2.0 * static_cast<double>(cfg.n_grid[i]));
}

TEST(CriticalN, ConstantYNeverDeviates) {
  DeviationProbeConfig cfg;
  cfg.replications = 1000;
  cfg.n_grid = log_spaced_grid(1, 1e3, 7);
  Rng rng(4);
  const auto res = empirical_critical_n(DiscreteY::constant_one(), cfg, rng);
  EXPECT_TRUE(res.no_deviation_ever);
  EXPECT_EQ(res.n_star, 1.0);
}

TEST(CriticalN, NarrowGridThrows) {
  DeviationProbeConfig cfg;
  cfg.replications = 1000;
  cfg.n_grid = {1, 2, 3};
  Rng rng(5);
  try {
    (void)empirical_critical_n(DiscreteY::two_atom(1e-3), cfg, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kGridTooNarrow);
  }
}

}  // namespace
