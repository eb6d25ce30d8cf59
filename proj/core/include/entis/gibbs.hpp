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

#ifndef ENTIS_GIBBS_HPP
#define ENTIS_GIBBS_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "entis/measures.hpp"
#include "entis/moment_set.hpp"
#include "entis/rng.hpp"

/**
 * \file
 * \brief Gibbs exponential families μ_β ∝ exp⟨β,T⟩ dπ over a discrete reference.
 *
 * A reference is either an exact finite distribution or an empirical ensemble drawn from a
 * continuous π. The second case is the same discrete computation on the fixed draws (common
 * random numbers), plus delta-method standard errors for the Monte Carlo error of the draws.
 */

namespace entis {

struct LogPartition {
  double value{0.0};
  std::optional<double> std_error;  ///< Sample-based references only.
};

struct MomentEstimate {
  Vector value;
  std::optional<Vector> std_error;  ///< Sample-based references only.
};

/// Reference measure and tabulated statistic defining the family β ↦ μ_β.
class GibbsFamily {
 public:
  /// Exact family on a finite space; row i of `table` is T(atom i).
  GibbsFamily(FiniteDistribution reference, StatisticTable table, std::string statistic_id = "T",
              std::string reference_id = "pi");

  /// Sample-based family: π is replaced by the weighted draws in `ensemble`.
  static GibbsFamily from_ensemble(const WeightedEnsemble& ensemble, const Statistic& statistic,
                                   std::string reference_id);

  [[nodiscard]] std::size_t dimension() const noexcept { return static_cast<std::size_t>(table_.cols()); }
  [[nodiscard]] std::size_t atoms() const noexcept { return static_cast<std::size_t>(table_.rows()); }
  [[nodiscard]] bool sample_based() const noexcept { return sample_based_; }
  [[nodiscard]] const StatisticTable& table() const noexcept { return table_; }
  [[nodiscard]] const std::vector<double>& log_reference() const noexcept { return log_reference_; }
  [[nodiscard]] const std::string& statistic_id() const noexcept { return statistic_id_; }
  [[nodiscard]] const std::string& reference_id() const noexcept { return reference_id_; }

  /// Exact reference distribution (finite families only).
  [[nodiscard]] const FiniteDistribution& reference() const;

  /// ln Σ π_i e^{⟨β,T_i⟩}.
  [[nodiscard]] double log_partition(const Vector& beta) const;

  /// μ_β probabilities over atoms (or draws).
  [[nodiscard]] std::vector<double> tilted_probs(const Vector& beta) const;

  /// μ_β(T) = ∇_β ln Z_β; throws DegenerateTilt when all mass collapses onto one atom.
  [[nodiscard]] Vector moment(const Vector& beta) const;

  /// Cov_{μ_β}(T), the Hessian of ln Z_β.
  [[nodiscard]] Matrix covariance(const Vector& beta) const;

  [[nodiscard]] Vector reference_moment() const { return moment(Vector::Zero(table_.cols())); }

  /// Componentwise range of T over the reference support.
  [[nodiscard]] std::pair<Vector, Vector> statistic_range() const;

 private:
  GibbsFamily() = default;

  std::optional<FiniteDistribution> reference_;
  std::vector<double> log_reference_;
  StatisticTable table_;
  std::string statistic_id_;
  std::string reference_id_;
  bool sample_based_{false};
};

/// Serializable part of a Gibbs model.
struct GibbsParameters {
  Vector beta;
  LogPartition log_partition;
  std::string statistic_id;
  std::string reference_id;
};

/// Member μ_β of a Gibbs family.
struct GibbsModel {
  std::shared_ptr<const GibbsFamily> family;
  Vector beta;
  LogPartition log_partition;

  [[nodiscard]] GibbsParameters parameters() const;

  /// μ_β as a finite distribution over the reference atoms (finite families only).
  [[nodiscard]] FiniteDistribution distribution() const;
};

/// Model at a given β with its log-partition (and standard error for sample-based families).
GibbsModel make_gibbs_model(std::shared_ptr<const GibbsFamily> family, Vector beta);

/// ln Σ_i π_i e^{⟨β,T(i)⟩}.
double log_partition_finite(const FiniteDistribution& pi, const StatisticTable& table, const Vector& beta);

/// μ_β(T), exact for finite families and with delta-method standard errors otherwise.
MomentEstimate moment_map(const GibbsModel& model);

struct SolverOptions {
  double tolerance{1e-10};        ///< required ‖μ_β(T) − t₀‖∞
  int max_iterations{500};
  double divergence_norm{1e4};    ///< ‖β‖ beyond this means t₀ is not an interior moment
  double step_tolerance{1e-8};    ///< projected-gradient stopping rule on ‖t_{k+1} − t_k‖∞
};

/// β with μ_β(T) = t₀, by damped Newton on A(β) − ⟨β,t₀⟩.
/**
 * Throws InfeasibleMoment when t₀ is not an interior moment (bounding-box test, divergence of β
 * or exhausted iterations) and SingularHessian when the components of T are affinely dependent
 * on the support of π.
 */
GibbsModel solve_linear_family(std::shared_ptr<const GibbsFamily> family, const Vector& t0,
                               const SolverOptions& options = {}, const Vector* warm_start = nullptr);

GibbsModel solve_linear_family(const FiniteDistribution& pi, const StatisticTable& table, const Vector& t0,
                               const SolverOptions& options = {});

/// Entropy minimizer over {η : η(T) ∈ C} inside the family.
/**
 * Polyhedral sets (box, halfspaces) use projected Newton on the dual multipliers λ ≥ 0 of
 * A t ≤ b, then a linear-family solve on the active rows, which zeroes the inactive multipliers
 * exactly. Balls use projected gradient on the moment, t_{k+1} = Proj_C(t_k − γ β(t_k)), whose
 * fixed points are the first-order condition ⟨β, t − μ_β(T)⟩ ≥ 0 for t ∈ C, with a dual Newton
 * fallback when Proj_C(π(T)) is not an interior moment.
 */
GibbsModel solve_convex_constraint(std::shared_ptr<const GibbsFamily> family, const ConvexMomentSet& set,
                                   const SolverOptions& options = {});

GibbsModel solve_convex_constraint(const FiniteDistribution& pi, const StatisticTable& table,
                                   const ConvexMomentSet& set, const SolverOptions& options = {});

/// min over `probes` random t ∈ C of ⟨β, t − μ_β(T)⟩; negative values violate optimality.
double first_order_slack(const GibbsModel& model, const ConvexMomentSet& set, Rng& rng, int probes = 1000);

/// Ent(η|π) − Ent(η|μ_∗) − Ent(μ_∗|π); nonnegative for admissible η, zero for linear families.
double pythagorean_check(const FiniteDistribution& eta, const GibbsModel& mu_star, const FiniteDistribution& pi);

}  // namespace entis

#endif
