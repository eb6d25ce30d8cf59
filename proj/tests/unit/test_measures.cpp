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

#include "entis/errors.hpp"
#include "entis/gibbs.hpp"
#include "entis/measures.hpp"
#include "oracles.hpp"

namespace {

using namespace entis;
using ::testing::ElementsAre;
using ::testing::DoubleNear;

TEST(FiniteDistribution, RejectsBadInput) {
  EXPECT_THROW(FiniteDistribution({0.5, 0.6}), Error);
  EXPECT_THROW(FiniteDistribution({-0.1, 1.1}), Error);
  EXPECT_THROW(FiniteDistribution({"a", "a"}, {0.5, 0.5}), Error);
  EXPECT_THROW(FiniteDistribution::from_weights({0.0, 0.0}), Error);
}

TEST(FiniteDistribution, DefaultLabelsAndAlignment) {
  const FiniteDistribution p({"x", "y", "z"}, {0.2, 0.3, 0.5});
  const FiniteDistribution q({"z", "x", "y"}, {0.1, 0.6, 0.3});
  const auto aligned = p.aligned(q);
  EXPECT_THAT(aligned.probs(), ElementsAre(0.6, 0.3, 0.1));
  EXPECT_NEAR(p.total_variation(q), 0.4, 1e-15);
  const FiniteDistribution r({"u", "v"}, {0.5, 0.5});
  try {
    (void)p.aligned(r);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kMismatchedSupport);
  }
  EXPECT_EQ(FiniteDistribution({0.5, 0.5}).atoms()[1], "1");
}

TEST(LogSumExp, ExtremeLogWeightsNormalizeWithoutOverflow) {
  const std::vector<double> lw{-1e308, 0.0};
  EXPECT_THAT(normalized_weights(lw), ElementsAre(0.0, 1.0));
  const std::vector<double> big{1e308, 1e308};
  EXPECT_NEAR(log_sum_exp(big), 1e308, 1e292);
  EXPECT_THAT(normalized_weights(big), ElementsAre(0.5, 0.5));
  const std::vector<double> all_neg{kNegInf, kNegInf};
  EXPECT_EQ(log_sum_exp(all_neg), kNegInf);
}

TEST(EffectiveSampleSize, HandComputed) {
  const std::vector<double> lw{std::log(0.5), std::log(0.25), std::log(0.25)};
  EXPECT_NEAR(effective_sample_size(lw), 8.0 / 3.0, 1e-14);
  const std::vector<double> equal(10, 3.0);
  EXPECT_NEAR(effective_sample_size(equal), 10.0, 1e-12);
}

TEST(EmpiricalMean, TiltedGaussianMean) {
  GaussianModel pi(0.0, 1.0);
  Rng rng(11);
  const int n = 100000;
  std::vector<Point> pts;
  std::vector<double> lw;
  for (int i = 0; i < n; ++i) {
    pts.push_back(pi.draw(rng));
    lw.push_back(0.5 * pts.back()(0));
  }
  const WeightedEnsemble ens(pts, lw);
  const double mean = empirical_mean(ens, Statistic::identity(1))(0);
  // Self-normalised IS s.e. via the delta method.
  const auto w = normalized_weights(ens);
  double var = 0.0;
  for (int i = 0; i < n; ++i) {
    var += w[i] * w[i] * std::pow(pts[i](0) - mean, 2);
  }
  EXPECT_NEAR(mean, 0.5, 3.0 * std::sqrt(var));
}

TEST(WeightedEnsemble, RejectsMismatchedInput) {
  EXPECT_THROW(WeightedEnsemble({Point::Zero(1)}, {0.0, 1.0}), Error);
  EXPECT_THROW(WeightedEnsemble(std::vector<Point>{}), Error);
  EXPECT_THROW(WeightedEnsemble({Point::Zero(1), Point::Zero(2)}), Error);
}

TEST(CategoricalModel, FrequenciesMatchProbabilities) {
  const CategoricalModel model(FiniteDistribution({0.1, 0.2, 0.7}));
  Rng rng(5);
  std::vector<int> counts(3, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    ++counts[model.draw_index(rng)];
  }
  for (std::size_t i = 0; i < 3; ++i) {
    const double p = model.distribution()[i];
    EXPECT_NEAR(counts[i] / double(n), p, 4.0 * std::sqrt(p * (1 - p) / n));
  }
  EXPECT_NEAR(model.log_density(Point::Constant(1, 2.0)), std::log(0.7), 1e-15);
}

TEST(Statistic, TabulatedReadsRows) {
  Matrix t(2, 2);
  t << 1, 2, 3, 4;
  const auto s = Statistic::tabulated(t);
  EXPECT_THAT(std::vector<double>({s(Point::Constant(1, 1.0))(0), s(Point::Constant(1, 1.0))(1)}),
              ElementsAre(DoubleNear(3, 0), DoubleNear(4, 0)));
}

}  // namespace
