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
#include <random>

#include "entis/entropy.hpp"
#include "entis/errors.hpp"
#include "oracles.hpp"

namespace {

using namespace entis;
using entis::testing::oracle_kl;
using entis::testing::oracle_renyi;
using entis::testing::random_simplex;

TEST(RelativeEntropy, DiracAgainstTwoAtoms) {
  const FiniteDistribution pi({0.7, 0.3});
  EXPECT_NEAR(relative_entropy_finite(FiniteDistribution({1.0, 0.0}), pi), -std::log(0.7), 1e-15);
  EXPECT_NEAR(-std::log(0.7), 0.356675, 1e-6);
}

TEST(RelativeEntropy, InfiniteWithoutAbsoluteContinuity) {
  EXPECT_EQ(relative_entropy_finite(FiniteDistribution({0.5, 0.5}), FiniteDistribution({1.0, 0.0})), kInf);
}

TEST(RelativeEntropy, MatchesLongDoubleOracle) {
  std::mt19937_64 gen(1);
  for (int i = 0; i < 200; ++i) {
    const auto p = random_simplex(gen, 6, true);
    const auto q = random_simplex(gen, 6);
    EXPECT_NEAR(relative_entropy_finite(FiniteDistribution(p), FiniteDistribution(q)), oracle_kl(p, q), 1e-12);
  }
}

TEST(Renyi, OrderTwoHandComputed) {
  const FiniteDistribution eta({0.5, 0.5}), pi({0.7, 0.3});
  const double direct = std::log(0.5 * 0.5 / 0.7 + 0.5 * 0.5 / 0.3);
  EXPECT_NEAR(renyi_entropy_finite(eta, pi, 2.0), direct, 1e-14);
  // Var_μ(Y) = e^{Ent_2} − 1 with Y = η/μ.
  const double var = 0.7 * std::pow(0.5 / 0.7 - 1, 2) + 0.3 * std::pow(0.5 / 0.3 - 1, 2);
  EXPECT_NEAR(variance_from_renyi2(renyi_entropy_finite(eta, pi, 2.0)), var, 1e-14);
}

TEST(Renyi, ThreePointSecondOrder) {
  const double l1 = 1e6, r = 1e-4, alpha = 0.01;
  const double l2 = r * l1;
  const FiniteDistribution mu({1 - alpha / l1 - (1 - alpha) / l2, alpha / l1, (1 - alpha) / l2});
  const FiniteDistribution eta({0.0, alpha, 1 - alpha});
  const double ent2 = renyi_entropy_finite(eta, mu, 2.0);
  EXPECT_NEAR(ent2, std::log(alpha * l1 + (1 - alpha) * l2), 1e-10);
  EXPECT_NEAR(ent2, 9.2202, 1e-4);
  EXPECT_NEAR(variance_from_renyi2(ent2), 10098.0, 1e-6);
}

TEST(Renyi, EndpointsAndOrderOne) {
  const FiniteDistribution eta({0.0, 0.4, 0.6}), mu({0.5, 0.25, 0.25});
  EXPECT_NEAR(renyi_entropy_finite(eta, mu, 0.0), -std::log(0.5), 1e-15);
  EXPECT_NEAR(renyi_entropy_finite(eta, mu, kInf), std::log(0.6 / 0.25), 1e-15);
  EXPECT_NEAR(renyi_entropy_finite(eta, mu, 1.0), relative_entropy_finite(eta, mu), 1e-15);
  EXPECT_THROW((void)renyi_entropy_finite(eta, mu, -1.0), Error);
}

TEST(Renyi, MatchesOracleAndIsMonotone) {
  std::mt19937_64 gen(2);
  const std::vector<double> orders{0.1, 0.5, 0.9, 1.5, 2.0, 3.0, 7.0};
  for (int i = 0; i < 200; ++i) {
    const auto p = random_simplex(gen, 5, true);
    const auto q = random_simplex(gen, 5);
    double prev = -kInf;
    for (const double a : orders) {
      const double v = renyi_entropy_finite(FiniteDistribution(p), FiniteDistribution(q), a);
      EXPECT_NEAR(v, oracle_renyi(p, q, a), 1e-11);
      EXPECT_GE(v, prev - 1e-12);
      prev = v;
    }
  }
}

TEST(EntropyReport, SortedOrdersAndLikelihoodVariance) {
  const FiniteDistribution eta({0.2, 0.8}), mu({0.5, 0.5});
  const std::vector<double> orders{2.0, 0.5, 1.0};
  const auto rep = entropy_report_finite(eta, mu, orders);
  ASSERT_EQ(rep.renyi.size(), 3u);
  EXPECT_EQ(rep.renyi[0].first, 0.5);
  EXPECT_EQ(rep.renyi[2].first, 2.0);
  EXPECT_TRUE(rep.estimator.exact);
  const double a = std::log(0.4), b = std::log(1.6);
  const double m = 0.2 * a + 0.8 * b;
  EXPECT_NEAR(rep.log_likelihood_variance, 0.2 * (a - m) * (a - m) + 0.8 * (b - m) * (b - m), 1e-14);
}

TEST(RelativeEntropyMc, GaussianMeanShift) {
  GaussianModel eta(0.5, 1.0);
  Rng rng(9);
  std::vector<Point> pts;
  for (int i = 0; i < 100000; ++i) {
    pts.push_back(eta.draw(rng));
  }
  const WeightedEnsemble draws(pts);
  const auto est = relative_entropy_mc([](const Point& x) { return -0.5 * (x(0) - 0.5) * (x(0) - 0.5); },
                                       [](const Point& x) { return -0.5 * x(0) * x(0); }, draws);
  EXPECT_NEAR(est.value, 0.125, 3.0 * est.std_error);
}

TEST(RelativeEntropyMc, GaussianScaleChange) {
  GaussianModel eta(0.0, 1.0);
  Rng rng(10);
  std::vector<Point> pts;
  for (int i = 0; i < 100000; ++i) {
    pts.push_back(eta.draw(rng));
  }
  const double sigma = 2.0;
  const auto est = relative_entropy_mc([](const Point& x) { return -0.5 * x(0) * x(0); },
                                       [&](const Point& x) { return -0.5 * x(0) * x(0) / (sigma * sigma); },
                                       WeightedEnsemble(pts), 0.0, std::log(sigma));
  EXPECT_NEAR(est.value, std::log(2.0) - 0.375, 3.0 * est.std_error);
}

TEST(ChainRule, SumsToDirectKl) {
  std::mt19937_64 gen(4);
  // 4×4 grid, projection onto the row index.
  std::vector<std::size_t> proj(16);
  for (std::size_t i = 0; i < 16; ++i) {
    proj[i] = i / 4;
  }
  for (int rep = 0; rep < 50; ++rep) {
    const auto p = random_simplex(gen, 16);
    const auto q = random_simplex(gen, 16);
    const auto terms = chain_rule_decompose(FiniteDistribution(p), FiniteDistribution(q), proj);
    EXPECT_NEAR(terms.marginal + terms.conditional, oracle_kl(p, q), 1e-10);
    EXPECT_GE(terms.conditional, -1e-14);
  }
}

TEST(PushForward, AddsMassPerClass) {
  const std::vector<std::size_t> proj{1, 0, 1};
  const auto pf = push_forward(FiniteDistribution({0.2, 0.3, 0.5}), proj, 2);
  EXPECT_NEAR(pf[0], 0.3, 1e-15);
  EXPECT_NEAR(pf[1], 0.7, 1e-15);
}

}  // namespace
