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

#ifndef ENTIS_ENTROPY_HPP
#define ENTIS_ENTROPY_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "entis/measures.hpp"

/**
 * \file
 * \brief Relative and Rényi entropies, exact on finite spaces and Monte Carlo otherwise.
 *
 * Rényi entropies use the standard order: Ent_α(η|μ) = (1/(α−1)) ln Σ η^α μ^{1−α}, so that
 * Ent_1 is the relative entropy, Ent_2 = ln E_μ(Y²) for Y = dη/dμ and
 * Ent_{1+θ} − Ent_{1−θ} = (1/θ) ln(E Y^{1+θ} E Y^{1−θ}). Endpoints: Ent_0 = −ln μ(supp η) and
 * Ent_∞ = ln max η/μ. Every order is +∞ when η is not absolutely continuous w.r.t. μ.
 */

namespace entis {

/// Unnormalized log-density on points.
using LogDensity = std::function<double(const Point&)>;

struct McEstimate {
  double value;
  double std_error;
};

/// How an EntropyReport was obtained.
struct EstimatorKind {
  bool exact{true};
  std::size_t samples{0};  ///< Monte Carlo only.
  double std_error{0.0};   ///< Jackknife standard error of `kl`; Monte Carlo only.

  friend bool operator==(const EstimatorKind&, const EstimatorKind&) = default;
};

struct EntropyReport {
  double kl{0.0};
  std::vector<std::pair<double, double>> renyi;  ///< (order, value) sorted by order.
  double log_likelihood_variance{0.0};           ///< Var_η ln(dη/dμ).
  EstimatorKind estimator;
};

/// Σ η_i ln(η_i/μ_i) with 0 ln 0 = 0; +∞ when η_i > 0 = μ_i. Throws MismatchedSupport.
double relative_entropy_finite(const FiniteDistribution& eta, const FiniteDistribution& mu);

/// Rényi entropy of order alpha ∈ [0, ∞] (alpha may be +inf).
double renyi_entropy_finite(const FiniteDistribution& eta, const FiniteDistribution& mu, double alpha);

/// Var_η ln(η/μ); +∞ when η is not dominated by μ.
double log_likelihood_variance_finite(const FiniteDistribution& eta, const FiniteDistribution& mu);

/// Orders used when a report is requested without explicit orders.
std::vector<double> default_renyi_orders();

EntropyReport entropy_report_finite(const FiniteDistribution& eta, const FiniteDistribution& mu,
                                    std::span<const double> orders);

/// Self-normalized estimate of η(ln η/μ) from draws of η, with a delete-one-block jackknife
/// standard error (blocks of 100). Offsets are the log-normalizers of the two densities.
McEstimate relative_entropy_mc(const LogDensity& eta_log_density, const LogDensity& mu_log_density,
                               const WeightedEnsemble& draws_from_eta, double eta_log_normalizer = 0.0,
                               double mu_log_normalizer = 0.0);

/// Report with KL, Rényi orders and log-likelihood variance estimated from draws of η.
EntropyReport entropy_report_mc(const LogDensity& eta_log_density, const LogDensity& mu_log_density,
                                const WeightedEnsemble& draws_from_eta, std::span<const double> orders,
                                double eta_log_normalizer = 0.0, double mu_log_normalizer = 0.0);

/// Var(Y) = e^{Ent_2} − 1 for the likelihood ratio Y = dη/dμ under μ.
double variance_from_renyi2(double ent2);

struct ChainRuleTerms {
  double marginal;     ///< Ent(T♯η | T♯π)
  double conditional;  ///< ∫ Ent(η(·|T=t) | π(·|T=t)) T♯η(dt)
};

/// Splits Ent(η|π) along a projection; `projection[i]` is the T-value index of atom i.
ChainRuleTerms chain_rule_decompose(const FiniteDistribution& joint_eta, const FiniteDistribution& joint_pi,
                                    std::span<const std::size_t> projection);

/// Push-forward of a finite distribution by an index map onto `classes` values.
FiniteDistribution push_forward(const FiniteDistribution& dist, std::span<const std::size_t> projection,
                                std::size_t classes);

}  // namespace entis

#endif
