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

#ifndef ENTIS_BOUNDS_HPP
#define ENTIS_BOUNDS_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "entis/entropy.hpp"
#include "entis/measures.hpp"
#include "entis/rng.hpp"

/**
 * \file
 * \brief Required sample size for importance sampling: ln N* = Ent(η|μ) ± R(Y) with Y = dη/dμ.
 */

namespace entis {

/// max((3/(p_α δ))⁴, (2/((1−p_α)(1−δ)))²); DomainError outside (0,1).
double c_constant(double delta, double p_alpha);

/// Slack with one Rényi gap or with two; the labels "single_gap" and "double_gap" are the serialized names.
enum class BoundVariant { kSingleGap, kDoubleGap };

std::string to_string(BoundVariant variant);
BoundVariant bound_variant_from_string(const std::string& name);

/// α ↦ Ent_α(η|μ). Only orders in [0, 2] are queried.
class RenyiProfile {
 public:
  using Function = std::function<double(double)>;

  explicit RenyiProfile(Function renyi) : renyi_(std::move(renyi)) {}

  static RenyiProfile finite(const FiniteDistribution& eta, const FiniteDistribution& mu);

  /// Piecewise-linear in the order between the tabulated values; +∞ outside the table.
  static RenyiProfile tabulated(const EntropyReport& report);

  [[nodiscard]] double renyi(double order) const { return renyi_(order); }

  /// Ent_{1+θ} − Ent_{1−θ} = (1/θ) ln(E Y^{1+θ} E Y^{1−θ}).
  [[nodiscard]] double gap(double theta) const { return renyi_(1.0 + theta) - renyi_(1.0 - theta); }

 private:
  Function renyi_;
};

struct SlackResult {
  double theta_star{1.0};
  double slack_r{0.0};
};

/// Minimizes k·g(θ) + ln c / θ over θ ∈ [1e-4, 1] (log grid, then golden section).
/// Throws ProfileIncomplete when the objective is +∞ on the whole grid.
SlackResult minimize_slack(const std::function<double(double)>& gap, double c, BoundVariant variant);

SlackResult slack_r(const RenyiProfile& profile, double c, BoundVariant variant);
SlackResult slack_r(const EntropyReport& report, double c, BoundVariant variant);

struct BoundReport {
  double ent{0.0};
  double theta_star{1.0};
  double slack_r{0.0};
  double c_constant{0.0};
  std::pair<double, double> ln_nstar_interval;
  BoundVariant variant{BoundVariant::kSingleGap};
};

BoundReport bound_report(double ent, const RenyiProfile& profile, double c, BoundVariant variant);
BoundReport bound_report(const FiniteDistribution& eta, const FiniteDistribution& mu, double c,
                         BoundVariant variant);

struct ThreePointParams {
  double l1{1e6};
  double r{1e-4};
  double alpha{0.01};

  [[nodiscard]] double p1() const noexcept { return alpha / l1; }
  [[nodiscard]] double l2() const noexcept { return r * l1; }
  [[nodiscard]] double p2() const noexcept { return (1.0 - alpha) / l2(); }
  /// α / r^{1−α}; the example needs this ≫ 1.
  [[nodiscard]] double regime_ratio() const;

  /// DomainError unless p1, p2 ∈ (0,1) and p1 + p2 ≤ 1.
  void validate() const;
};

struct ThreePointReport {
  ThreePointParams params;
  double ent{0.0};
  double ln_var{0.0};  ///< ln E Y²
  double gap{0.0};
  double theta_star{1.0};
  double slack_r{0.0};
  double dominance_ratio{0.0};
  double c_constant{0.0};
  double regime_ratio{0.0};
};

ThreePointReport three_point_report(const ThreePointParams& params, double c = c_constant(0.5, 0.5),
                                    BoundVariant variant = BoundVariant::kSingleGap);

/// μ = (1−p1−p2, p1, p2) and η = (0, α, 1−α) on atoms {0, l1, l2}; Y = dη/dμ takes values 0, l1, l2.
std::pair<FiniteDistribution, FiniteDistribution> three_point_distributions(const ThreePointParams& params);

/// l1 = 10^k, r = 10^{−k/2}, α = 10^{−k/4}.
ThreePointParams dominance_params(int k);

std::vector<ThreePointReport> dominance_sweep(int k_min = 4, int k_max = 12, double c = c_constant(0.5, 0.5),
                                              BoundVariant variant = BoundVariant::kSingleGap);

/// Finitely supported likelihood ratio with E Y = 1.
class DiscreteY {
 public:
  /// Throws DomainError unless values ≥ 0, probs form a distribution and |E Y − 1| ≤ 1e-9.
  DiscreteY(std::vector<double> values, std::vector<double> probs);

  static DiscreteY constant_one() { return DiscreteY({1.0}, {1.0}); }
  static DiscreteY three_point(const ThreePointParams& params);
  /// 0 with probability 1−ε, 1/ε with probability ε.
  static DiscreteY two_atom(double epsilon);

  [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
  [[nodiscard]] const std::vector<double>& probs() const noexcept { return probs_; }

  /// (η, μ) with μ = probs and η_j = probs_j · values_j.
  [[nodiscard]] std::pair<FiniteDistribution, FiniteDistribution> distributions() const;

  /// Sample mean of N draws, via sequential binomial counts.
  [[nodiscard]] double sample_mean(std::uint64_t n, Rng& rng) const;

 private:
  std::vector<double> values_;
  std::vector<double> probs_;
};

struct DeviationProbeConfig {
  double delta{0.5};
  double p_alpha{0.5};
  int replications{10000};
  std::vector<std::uint64_t> n_grid;  ///< empty: log_spaced_grid(1, 1e8, 49)
  int bootstrap{200};
  double confidence{0.95};

  void validate() const;
};

/// Distinct integers, log-spaced between lo and hi inclusive.
std::vector<std::uint64_t> log_spaced_grid(double lo, double hi, int count);

/// Pool-adjacent-violators fit of a nonincreasing sequence.
std::vector<double> isotonic_decreasing(std::span<const double> values);

struct CriticalNResult {
  double n_star{0.0};
  double ci_low{0.0};
  double ci_high{0.0};
  bool no_deviation_ever{false};
  std::vector<std::uint64_t> grid;
  std::vector<double> p_dev_raw;
  std::vector<double> p_dev_monotone;
};

/**
 * Estimates p_dev(N) = P(|N⁻¹ Σ Y_i − 1| ≥ δ) on the grid, fits a nonincreasing curve and inverts
 * p_dev(N*) = p_α by interpolation in ln N. The interval comes from a binomial bootstrap of each
 * grid estimate. Throws GridTooNarrow when the fitted curve does not cross p_α on the grid.
 */
CriticalNResult empirical_critical_n(const DiscreteY& y, const DeviationProbeConfig& cfg, Rng& rng);

}  // namespace entis

#endif
