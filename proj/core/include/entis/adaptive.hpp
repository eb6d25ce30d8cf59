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

#ifndef ENTIS_ADAPTIVE_HPP
#define ENTIS_ADAPTIVE_HPP

#include <optional>
#include <string>
#include <vector>

#include "entis/gibbs.hpp"
#include "entis/measures.hpp"
#include "entis/moment_set.hpp"
#include "entis/rng.hpp"

/**
 * \file
 * \brief Cross-entropy adaptive importance sampling within a Gibbs family.
 *
 * The family's atoms (exact finite atoms, or fixed draws of a continuous π) are sampled exactly
 * under μ_β, so both variants reduce to categorical sampling plus a linear or convex moment solve.
 */

namespace entis {

struct CrossEntropyState {
  int iteration{0};
  Vector beta;
  std::optional<WeightedEnsemble> ensemble;  ///< points carry the atom index; empty before the first step
  Vector moment;                             ///< η^N(T)
  Vector moment_std_error;
  Vector beta_std_error;  ///< delta method through Cov_{μ_β}(T)⁻¹
  double ess{0.0};
  bool trust_region_used{false};
  std::vector<std::string> warnings;
};

/// Box center ± z·(bootstrap s.e.) per coordinate.
struct ConfidenceMomentSet {
  Vector center;
  Vector radius;

  [[nodiscard]] ConvexMomentSet set() const;
};

struct CrossEntropyOptions {
  std::size_t samples{10000};
  double trust_fraction{0.5};  ///< shrink factor toward the current moment when the raw moment is infeasible
  int max_trust_halvings{40};
  double ess_warning{10.0};
  int bootstrap{200};  ///< confidence variant only
  SolverOptions solver{};
};

/// State with β = beta0 and no samples yet.
CrossEntropyState initial_state(const GibbsFamily& family, const Vector& beta0);

/**
 * Draws N atoms from μ_{β_k}, weights them by exp(target_log − ⟨β_k,T⟩ + A(β_k)) and refits β by
 * moment matching. `target_log_density` is the unnormalized log density of the target with
 * respect to the family's reference, one entry per atom.
 */
CrossEntropyState ce_step(std::shared_ptr<const GibbsFamily> family, const CrossEntropyState& state,
                          const std::vector<double>& target_log_density, const CrossEntropyOptions& options,
                          Rng& rng);

/// As ce_step, but β solves the entropy projection onto the bootstrap confidence box.
CrossEntropyState ce_step_confidence(std::shared_ptr<const GibbsFamily> family, const CrossEntropyState& state,
                                     const std::vector<double>& target_log_density, double z_multiplier,
                                     const CrossEntropyOptions& options, Rng& rng);

ConfidenceMomentSet confidence_moment_set(const GibbsFamily& family, const WeightedEnsemble& ensemble,
                                          double z_multiplier, int bootstrap, Rng& rng);

struct CrossEntropyConfig {
  CrossEntropyOptions options{};
  int max_iterations{50};
  double beta_tolerance{1e-3};  ///< stop when ‖β_{k+1} − β_k‖∞ is at most this
  bool confidence{false};
  double z_multiplier{3.0};
};

struct CrossEntropyRun {
  std::vector<CrossEntropyState> trajectory;  ///< includes the initial state
  bool converged{false};
  GibbsModel model;
};

CrossEntropyRun run_cross_entropy(std::shared_ptr<const GibbsFamily> family,
                                  const std::vector<double>& target_log_density, const Vector& beta0,
                                  const CrossEntropyConfig& cfg, Rng& rng);

}  // namespace entis

#endif
