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

#include "entis/entropy.hpp"

#include <algorithm>
#include <cmath>

#include "entis/errors.hpp"

namespace entis {

namespace {

// Log-likelihood ratios on the support of eta; flags domination failure.
struct SupportTerms {
  std::vector<double> eta;
  std::vector<double> log_ratio;
  bool dominated{true};
};

SupportTerms support_terms(const FiniteDistribution& eta, const FiniteDistribution& mu_raw) {
  const auto mu = eta.aligned(mu_raw);
  SupportTerms terms;
  for (std::size_t i = 0; i < eta.size(); ++i) {
    if (eta[i] == 0.0) {
      continue;
    }
    if (mu[i] == 0.0) {
      terms.dominated = false;
      continue;
    }
    terms.eta.push_back(eta[i]);
    terms.log_ratio.push_back(std::log(eta[i]) - std::log(mu[i]));
  }
  return terms;
}

double kl_from_terms(const SupportTerms& terms) {
  double sum = 0.0;
  for (std::size_t i = 0; i < terms.eta.size(); ++i) {
    sum += terms.eta[i] * terms.log_ratio[i];
  }
  // Rounding on eta ≈ mu can leave a tiny negative value.
  if (sum < 0.0 && sum > -1e-14) {
    sum = 0.0;
  }
  return sum;
}

// (1/s) ln( Σ w_i e^{s L_i} / Σ w_i ), accurate for small |s| through expm1/log1p.
double scaled_cumulant(std::span<const double> weights, std::span<const double> log_ratio, double s) {
  double total = 0.0;
  double max_abs = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    total += weights[i];
    max_abs = std::max(max_abs, std::abs(log_ratio[i]));
  }
  if (std::abs(s) * max_abs < 0.5) {
    double x = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      x += weights[i] * std::expm1(s * log_ratio[i]);
    }
    return std::log1p(x / total) / s;
  }
  std::vector<double> terms(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    terms[i] = std::log(weights[i]) + s * log_ratio[i];
  }
  return (log_sum_exp(terms) - std::log(total)) / s;
}

double renyi_from_terms(const SupportTerms& terms, double alpha) {
  if (!terms.dominated) {
    return kInf;
  }
  if (alpha == 1.0) {
    return kl_from_terms(terms);
  }
  if (std::isinf(alpha)) {
    return *std::max_element(terms.log_ratio.begin(), terms.log_ratio.end());
  }
  return scaled_cumulant(terms.eta, terms.log_ratio, alpha - 1.0);
}

void check_order(double alpha) {
  if (!(alpha >= 0.0)) {
    throw Error(ErrorKind::kDomainError, "Rényi order must be in [0, inf]");
  }
}

struct McTerms {
  std::vector<double> weights;  // unnormalized, max-scaled
  std::vector<double> log_ratio;
};

McTerms mc_terms(const LogDensity& eta_log_density, const LogDensity& mu_log_density,
                 const WeightedEnsemble& draws, double eta_offset, double mu_offset) {
  const auto w = normalized_weights(draws);
  McTerms terms;
  for (std::size_t n = 0; n < draws.size(); ++n) {
    if (w[n] == 0.0) {
      continue;
    }
    const auto& x = draws.points()[n];
    const double le = eta_log_density(x) - eta_offset;
    const double lm = mu_log_density(x) - mu_offset;
    if (le == kNegInf) {
      continue;
    }
    terms.weights.push_back(w[n]);
    terms.log_ratio.push_back(lm == kNegInf ? kInf : le - lm);
  }
  if (terms.weights.empty()) {
    throw Error(ErrorKind::kAllWeightsDegenerate, "no draw lies in the support of eta");
  }
  return terms;
}

double weighted_mean(std::span<const double> w, std::span<const double> v) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    num += w[i] * v[i];
    den += w[i];
  }
  return num / den;
}

double jackknife_std_error(std::span<const double> w, std::span<const double> v) {
  const std::size_t n = w.size();
  const std::size_t block = std::max<std::size_t>(1, std::min<std::size_t>(100, n / 2));
  const std::size_t blocks = n / block;
  if (blocks < 2) {
    return kInf;
  }
  double num_total = 0.0;
  double den_total = 0.0;
  for (std::size_t i = 0; i < blocks * block; ++i) {
    num_total += w[i] * v[i];
    den_total += w[i];
  }
  std::vector<double> estimates(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = b * block; i < (b + 1) * block; ++i) {
      num += w[i] * v[i];
      den += w[i];
    }
    estimates[b] = (num_total - num) / (den_total - den);
  }
  double mean = 0.0;
  for (const double e : estimates) {
    mean += e;
  }
  mean /= static_cast<double>(blocks);
  double ss = 0.0;
  for (const double e : estimates) {
    ss += (e - mean) * (e - mean);
  }
  return std::sqrt(ss * static_cast<double>(blocks - 1) / static_cast<double>(blocks));
}

}  // namespace

double relative_entropy_finite(const FiniteDistribution& eta, const FiniteDistribution& mu) {
  const auto terms = support_terms(eta, mu);
  return terms.dominated ? kl_from_terms(terms) : kInf;
}

double renyi_entropy_finite(const FiniteDistribution& eta, const FiniteDistribution& mu, double alpha) {
  check_order(alpha);
  return renyi_from_terms(support_terms(eta, mu), alpha);
}

double log_likelihood_variance_finite(const FiniteDistribution& eta, const FiniteDistribution& mu) {
  const auto terms = support_terms(eta, mu);
  if (!terms.dominated) {
    return kInf;
  }
  const double kl = kl_from_terms(terms);
  double var = 0.0;
  for (std::size_t i = 0; i < terms.eta.size(); ++i) {
    const double d = terms.log_ratio[i] - kl;
    var += terms.eta[i] * d * d;
  }
  return var;
}

std::vector<double> default_renyi_orders() {
  return {0.0, 0.25, 0.5, 0.75, 0.9, 1.0, 1.1, 1.25, 1.5, 2.0, 3.0, 5.0};
}

EntropyReport entropy_report_finite(const FiniteDistribution& eta, const FiniteDistribution& mu,
                                    std::span<const double> orders) {
  const auto terms = support_terms(eta, mu);
  EntropyReport report;
  report.kl = terms.dominated ? kl_from_terms(terms) : kInf;
  report.log_likelihood_variance = log_likelihood_variance_finite(eta, mu);
  for (const double alpha : orders) {
    check_order(alpha);
    report.renyi.emplace_back(alpha, renyi_from_terms(terms, alpha));
  }
  std::sort(report.renyi.begin(), report.renyi.end());
  report.estimator = EstimatorKind{true, 0, 0.0};
  return report;
}

McEstimate relative_entropy_mc(const LogDensity& eta_log_density, const LogDensity& mu_log_density,
                               const WeightedEnsemble& draws_from_eta, double eta_log_normalizer,
                               double mu_log_normalizer) {
  const auto terms =
      mc_terms(eta_log_density, mu_log_density, draws_from_eta, eta_log_normalizer, mu_log_normalizer);
  return McEstimate{weighted_mean(terms.weights, terms.log_ratio),
                    jackknife_std_error(terms.weights, terms.log_ratio)};
}

EntropyReport entropy_report_mc(const LogDensity& eta_log_density, const LogDensity& mu_log_density,
                                const WeightedEnsemble& draws_from_eta, std::span<const double> orders,
                                double eta_log_normalizer, double mu_log_normalizer) {
  const auto terms =
      mc_terms(eta_log_density, mu_log_density, draws_from_eta, eta_log_normalizer, mu_log_normalizer);
  const bool dominated = std::none_of(terms.log_ratio.begin(), terms.log_ratio.end(),
                                      [](double l) { return std::isinf(l); });
  EntropyReport report;
  report.kl = dominated ? weighted_mean(terms.weights, terms.log_ratio) : kInf;
  report.estimator = EstimatorKind{false, draws_from_eta.size(),
                                   dominated ? jackknife_std_error(terms.weights, terms.log_ratio) : kInf};
  double var = 0.0;
  if (dominated) {
    double den = 0.0;
    for (std::size_t i = 0; i < terms.weights.size(); ++i) {
      const double d = terms.log_ratio[i] - report.kl;
      var += terms.weights[i] * d * d;
      den += terms.weights[i];
    }
    var /= den;
  }
  report.log_likelihood_variance = dominated ? var : kInf;
  for (const double alpha : orders) {
    check_order(alpha);
    double value = kInf;
    if (dominated) {
      if (alpha == 1.0) {
        value = report.kl;
      } else if (std::isinf(alpha)) {
        value = *std::max_element(terms.log_ratio.begin(), terms.log_ratio.end());
      } else {
        value = scaled_cumulant(terms.weights, terms.log_ratio, alpha - 1.0);
      }
    }
    report.renyi.emplace_back(alpha, value);
  }
  std::sort(report.renyi.begin(), report.renyi.end());
  return report;
}

double variance_from_renyi2(double ent2) {
  if (!(ent2 >= 0.0)) {
    throw Error(ErrorKind::kDomainError, "order-2 Rényi entropy must be nonnegative");
  }
  return std::expm1(ent2);
}

FiniteDistribution push_forward(const FiniteDistribution& dist, std::span<const std::size_t> projection,
                                std::size_t classes) {
  if (projection.size() != dist.size()) {
    throw Error(ErrorKind::kInvalidArgument, "projection must map every atom");
  }
  std::vector<double> mass(classes, 0.0);
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (projection[i] >= classes) {
      throw Error(ErrorKind::kInvalidArgument, "projection index out of range");
    }
    mass[projection[i]] += dist[i];
  }
  return FiniteDistribution::from_weights(std::move(mass));
}

ChainRuleTerms chain_rule_decompose(const FiniteDistribution& joint_eta, const FiniteDistribution& joint_pi,
                                    std::span<const std::size_t> projection) {
  const auto pi = joint_eta.aligned(joint_pi);
  if (projection.size() != joint_eta.size()) {
    throw Error(ErrorKind::kInvalidArgument, "projection must map every atom");
  }
  const std::size_t classes = *std::max_element(projection.begin(), projection.end()) + 1;
  const auto eta_t = push_forward(joint_eta, projection, classes);
  const auto pi_t = push_forward(pi, projection, classes);
  ChainRuleTerms terms{relative_entropy_finite(eta_t, pi_t), 0.0};
  for (std::size_t i = 0; i < joint_eta.size(); ++i) {
    const double e = joint_eta[i];
    if (e == 0.0) {
      continue;
    }
    const std::size_t t = projection[i];
    if (pi[i] == 0.0) {
      terms.conditional = kInf;
      continue;
    }
    // η(i|t) ln(η(i|t) / π(i|t)), weighted by T♯η(t).
    const double cond_eta = e / eta_t[t];
    const double cond_pi = pi[i] / pi_t[t];
    terms.conditional += eta_t[t] * cond_eta * (std::log(cond_eta) - std::log(cond_pi));
  }
  if (terms.conditional < 0.0 && terms.conditional > -1e-14) {
    terms.conditional = 0.0;
  }
  return terms;
}

}  // namespace entis
