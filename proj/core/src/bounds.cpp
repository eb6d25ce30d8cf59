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

#include "entis/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "entis/errors.hpp"

namespace entis {

namespace {

constexpr double kThetaMin = 1e-4;
constexpr double kThetaMax = 1.0;
constexpr int kThetaGrid = 100;

double factor(BoundVariant variant) { return variant == BoundVariant::kSingleGap ? 1.0 : 2.0; }

void require_open_unit(double value, const char* name) {
  if (!(value > 0.0 && value < 1.0)) {
    throw Error(ErrorKind::kDomainError, std::string(name) + " must lie in (0, 1)");
  }
}

double objective_value(double g, double k, double ln_c, double theta) {
  const double v = k * g + ln_c / theta;
  return std::isnan(v) ? kInf : v;
}

// Linear interpolation of ln N against p on the bracketing pair; nullopt if no crossing.
std::optional<double> invert(const std::vector<std::uint64_t>& grid, std::span<const double> p, double target) {
  if (p.front() < target || p.back() > target) {
    return std::nullopt;
  }
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (p[i] <= target && p[i - 1] > target) {
      const double a = std::log(static_cast<double>(grid[i - 1]));
      const double b = std::log(static_cast<double>(grid[i]));
      return a + (p[i - 1] - target) / (p[i - 1] - p[i]) * (b - a);
    }
  }
  // p.front() == target: the crossing is at the first grid point.
  return std::log(static_cast<double>(grid.front()));
}

double percentile(std::vector<double> values, double q) {
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

}  // namespace

double c_constant(double delta, double p_alpha) {
  require_open_unit(delta, "delta");
  require_open_unit(p_alpha, "p_alpha");
  return std::max(std::pow(3.0 / (p_alpha * delta), 4), std::pow(2.0 / ((1.0 - p_alpha) * (1.0 - delta)), 2));
}

std::string to_string(BoundVariant variant) {
  return variant == BoundVariant::kSingleGap ? "single_gap" : "double_gap";
}

BoundVariant bound_variant_from_string(const std::string& name) {
  if (name == "single_gap") {
    return BoundVariant::kSingleGap;
  }
  if (name == "double_gap") {
    return BoundVariant::kDoubleGap;
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown bound variant '" + name + "'");
}

RenyiProfile RenyiProfile::finite(const FiniteDistribution& eta, const FiniteDistribution& mu) {
  return RenyiProfile([eta, mu](double order) { return renyi_entropy_finite(eta, mu, order); });
}

RenyiProfile RenyiProfile::tabulated(const EntropyReport& report) {
  auto table = report.renyi;
  if (table.empty()) {
    throw Error(ErrorKind::kProfileIncomplete, "entropy report has no Rényi orders");
  }
  return RenyiProfile([table = std::move(table)](double order) {
    if (order < table.front().first || order > table.back().first) {
      return kInf;
    }
    const auto it = std::lower_bound(table.begin(), table.end(), order,
                                     [](const auto& entry, double o) { return entry.first < o; });
    if (it->first == order || it == table.begin()) {
      return it->second;
    }
    const auto& [o1, v1] = *(it - 1);
    const auto& [o2, v2] = *it;
    if (!std::isfinite(v1) || !std::isfinite(v2)) {
      return kInf;
    }
    return v1 + (order - o1) / (o2 - o1) * (v2 - v1);
  });
}

SlackResult minimize_slack(const std::function<double(double)>& gap, double c, BoundVariant variant) {
  if (!(c > 1.0)) {
    throw Error(ErrorKind::kDomainError, "c must exceed 1");
  }
  const double k = factor(variant);
  const double ln_c = std::log(c);
  const auto f = [&](double theta) { return objective_value(gap(theta), k, ln_c, theta); };

  std::vector<double> grid(kThetaGrid);
  const double step = std::log(kThetaMax / kThetaMin) / (kThetaGrid - 1);
  std::size_t best = 0;
  double best_value = kInf;
  for (int i = 0; i < kThetaGrid; ++i) {
    grid[static_cast<std::size_t>(i)] = i == kThetaGrid - 1 ? kThetaMax : kThetaMin * std::exp(step * i);
    const double v = f(grid[static_cast<std::size_t>(i)]);
    if (v < best_value) {
      best_value = v;
      best = static_cast<std::size_t>(i);
    }
  }
  if (!std::isfinite(best_value)) {
    throw Error(ErrorKind::kProfileIncomplete, "Rényi gap is infinite for every θ in [1e-4, 1]");
  }

  double a = grid[best == 0 ? 0 : best - 1];
  double b = grid[std::min(best + 1, grid.size() - 1)];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > 1e-12 * std::max(1.0, b)) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  SlackResult result{grid[best], best_value};
  for (const double theta : {x1, x2, a, b}) {
    const double v = f(theta);
    if (v < result.slack_r) {
      result = {theta, v};
    }
  }
  return result;
}

SlackResult slack_r(const RenyiProfile& profile, double c, BoundVariant variant) {
  return minimize_slack([&](double theta) { return profile.gap(theta); }, c, variant);
}

SlackResult slack_r(const EntropyReport& report, double c, BoundVariant variant) {
  return slack_r(RenyiProfile::tabulated(report), c, variant);
}

BoundReport bound_report(double ent, const RenyiProfile& profile, double c, BoundVariant variant) {
  const auto s = slack_r(profile, c, variant);
  return BoundReport{ent, s.theta_star, s.slack_r, c, {ent - s.slack_r, ent + s.slack_r}, variant};
}

BoundReport bound_report(const FiniteDistribution& eta, const FiniteDistribution& mu, double c,
                         BoundVariant variant) {
  return bound_report(relative_entropy_finite(eta, mu), RenyiProfile::finite(eta, mu), c, variant);
}

double ThreePointParams::regime_ratio() const { return alpha / std::pow(r, 1.0 - alpha); }

void ThreePointParams::validate() const {
  if (!(l1 > 0.0) || !std::isfinite(l1)) {
    throw Error(ErrorKind::kDomainError, "l1 must be positive");
  }
  require_open_unit(r, "r");
  require_open_unit(alpha, "alpha");
  const double a = p1();
  const double b = p2();
  if (!(a > 0.0 && a < 1.0) || !(b > 0.0 && b < 1.0) || a + b > 1.0) {
    throw Error(ErrorKind::kDomainError, "three-point parameters give p1, p2 outside the simplex");
  }
}

ThreePointReport three_point_report(const ThreePointParams& params, double c, BoundVariant variant) {
  params.validate();
  const double alpha = params.alpha;
  const double r = params.r;
  ThreePointReport report;
  report.params = params;
  report.c_constant = c;
  report.ent = std::log(params.l1) + (1.0 - alpha) * std::log(r);
  report.ln_var = std::log(alpha * params.l1 + (1.0 - alpha) * params.l2());
  report.gap = report.ln_var - report.ent;
  const auto s = minimize_slack(
      [&](double theta) {
        return std::log1p(alpha * (1.0 - alpha) * (std::pow(r, theta) + std::pow(r, -theta) - 2.0)) / theta;
      },
      c, variant);
  report.theta_star = s.theta_star;
  report.slack_r = s.slack_r;
  report.dominance_ratio = report.gap / report.slack_r;
  report.regime_ratio = params.regime_ratio();
  return report;
}

std::pair<FiniteDistribution, FiniteDistribution> three_point_distributions(const ThreePointParams& params) {
  params.validate();
  std::vector<std::string> atoms{"0", "l1", "l2"};
  FiniteDistribution mu(atoms, {1.0 - params.p1() - params.p2(), params.p1(), params.p2()});
  FiniteDistribution eta(atoms, {0.0, params.alpha, 1.0 - params.alpha});
  return {std::move(eta), std::move(mu)};
}

ThreePointParams dominance_params(int k) {
  const double kd = static_cast<double>(k);
  return ThreePointParams{std::pow(10.0, kd), std::pow(10.0, -kd / 2.0), std::pow(10.0, -kd / 4.0)};
}

std::vector<ThreePointReport> dominance_sweep(int k_min, int k_max, double c, BoundVariant variant) {
  if (k_min > k_max) {
    throw Error(ErrorKind::kInvalidArgument, "empty k range");
  }
  std::vector<ThreePointReport> out;
  for (int k = k_min; k <= k_max; ++k) {
    out.push_back(three_point_report(dominance_params(k), c, variant));
  }
  return out;
}

DiscreteY::DiscreteY(std::vector<double> values, std::vector<double> probs)
    : values_(std::move(values)), probs_(std::move(probs)) {
  if (values_.empty() || values_.size() != probs_.size()) {
    throw Error(ErrorKind::kInvalidArgument, "values and probs must be nonempty and of equal length");
  }
  double total = 0.0;
  double mean = 0.0;
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (!(values_[j] >= 0.0) || !std::isfinite(values_[j]) || !(probs_[j] >= 0.0)) {
      throw Error(ErrorKind::kDomainError, "likelihood ratio values and probabilities must be nonnegative");
    }
    total += probs_[j];
    mean += probs_[j] * values_[j];
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorKind::kDomainError, "probabilities must sum to 1");
  }
  if (std::abs(mean - 1.0) > 1e-9) {
    throw Error(ErrorKind::kDomainError, "likelihood ratio must have unit mean");
  }
}

DiscreteY DiscreteY::three_point(const ThreePointParams& params) {
  params.validate();
  return DiscreteY({0.0, params.l1, params.l2()}, {1.0 - params.p1() - params.p2(), params.p1(), params.p2()});
}

DiscreteY DiscreteY::two_atom(double epsilon) {
  require_open_unit(epsilon, "epsilon");
  return DiscreteY({0.0, 1.0 / epsilon}, {1.0 - epsilon, epsilon});
}

std::pair<FiniteDistribution, FiniteDistribution> DiscreteY::distributions() const {
  std::vector<double> eta(values_.size());
  for (std::size_t j = 0; j < eta.size(); ++j) {
    eta[j] = probs_[j] * values_[j];
  }
  return {FiniteDistribution::from_weights(std::move(eta)), FiniteDistribution::from_weights(probs_)};
}

double DiscreteY::sample_mean(std::uint64_t n, Rng& rng) const {
  auto remaining = static_cast<std::int64_t>(n);
  double remaining_mass = 1.0;
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < values_.size() && remaining > 0; ++j) {
    const double p = remaining_mass > 0.0 ? std::clamp(probs_[j] / remaining_mass, 0.0, 1.0) : 1.0;
    std::binomial_distribution<std::int64_t> binomial(remaining, p);
    const auto count = binomial(rng);
    sum += static_cast<double>(count) * values_[j];
    remaining -= count;
    remaining_mass -= probs_[j];
  }
  sum += static_cast<double>(remaining) * values_.back();
  return sum / static_cast<double>(n);
}

void DeviationProbeConfig::validate() const {
  require_open_unit(delta, "delta");
  require_open_unit(p_alpha, "p_alpha");
  require_open_unit(confidence, "confidence");
  if (replications < 1000) {
    throw Error(ErrorKind::kInvalidArgument, "at least 1000 replications are required");
  }
  if (bootstrap < 1) {
    throw Error(ErrorKind::kInvalidArgument, "bootstrap count must be positive");
  }
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] == 0 || (i > 0 && n_grid[i] <= n_grid[i - 1])) {
      throw Error(ErrorKind::kInvalidArgument, "n_grid must be positive and strictly increasing");
    }
  }
}

std::vector<std::uint64_t> log_spaced_grid(double lo, double hi, int count) {
  if (!(lo >= 1.0) || !(hi >= lo) || count < 1) {
    throw Error(ErrorKind::kInvalidArgument, "log grid needs 1 <= lo <= hi and count >= 1");
  }
  std::vector<std::uint64_t> grid;
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    const auto n = static_cast<std::uint64_t>(std::llround(lo * std::pow(hi / lo, t)));
    if (grid.empty() || n > grid.back()) {
      grid.push_back(n);
    }
  }
  return grid;
}

std::vector<double> isotonic_decreasing(std::span<const double> values) {
  // Blocks of (mean, weight) merged while the decreasing order is violated.
  std::vector<double> means;
  std::vector<std::size_t> sizes;
  for (const double v : values) {
    means.push_back(v);
    sizes.push_back(1);
    while (means.size() > 1 && means[means.size() - 2] < means.back()) {
      const auto n1 = static_cast<double>(sizes[sizes.size() - 2]);
      const auto n2 = static_cast<double>(sizes.back());
      const double merged = (n1 * means[means.size() - 2] + n2 * means.back()) / (n1 + n2);
      means.pop_back();
      sizes[sizes.size() - 2] += sizes.back();
      sizes.pop_back();
      means.back() = merged;
    }
  }
  std::vector<double> out;
  out.reserve(values.size());
  for (std::size_t b = 0; b < means.size(); ++b) {
    out.insert(out.end(), sizes[b], means[b]);
  }
  return out;
}

CriticalNResult empirical_critical_n(const DiscreteY& y, const DeviationProbeConfig& cfg, Rng& rng) {
  cfg.validate();
  CriticalNResult result;
  result.grid = cfg.n_grid.empty() ? log_spaced_grid(1.0, 1e8, 49) : cfg.n_grid;
  const auto m = static_cast<std::size_t>(cfg.replications);

  const Rng base = rng.split(rng());
  for (std::size_t i = 0; i < result.grid.size(); ++i) {
    Rng stream = base.split(static_cast<std::uint64_t>(i));
    std::size_t deviations = 0;
    for (std::size_t rep = 0; rep < m; ++rep) {
      if (std::abs(y.sample_mean(result.grid[i], stream) - 1.0) >= cfg.delta) {
        ++deviations;
      }
    }
    result.p_dev_raw.push_back(static_cast<double>(deviations) / static_cast<double>(m));
  }
  result.p_dev_monotone = isotonic_decreasing(result.p_dev_raw);

  if (std::all_of(result.p_dev_raw.begin(), result.p_dev_raw.end(), [](double p) { return p == 0.0; })) {
    result.no_deviation_ever = true;
    result.n_star = result.ci_low = result.ci_high = static_cast<double>(result.grid.front());
    return result;
  }
  const auto ln_n = invert(result.grid, result.p_dev_monotone, cfg.p_alpha);
  if (!ln_n) {
    throw Error(ErrorKind::kGridTooNarrow, "deviation probability does not cross p_alpha on the N grid");
  }
  result.n_star = std::exp(*ln_n);

  Rng boot = base.split("bootstrap");
  std::vector<double> replicates;
  std::vector<double> resampled(result.grid.size());
  for (int b = 0; b < cfg.bootstrap; ++b) {
    for (std::size_t i = 0; i < resampled.size(); ++i) {
      std::binomial_distribution<std::int64_t> binomial(static_cast<std::int64_t>(m), result.p_dev_raw[i]);
      resampled[i] = static_cast<double>(binomial(boot)) / static_cast<double>(m);
    }
    if (const auto v = invert(result.grid, isotonic_decreasing(resampled), cfg.p_alpha)) {
      replicates.push_back(*v);
    }
  }
  if (replicates.empty()) {
    result.ci_low = result.ci_high = result.n_star;
  } else {
    const double tail = (1.0 - cfg.confidence) / 2.0;
    result.ci_low = std::exp(percentile(replicates, tail));
    result.ci_high = std::exp(percentile(replicates, 1.0 - tail));
  }
  return result;
}

}  // namespace entis
