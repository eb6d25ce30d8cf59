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

#ifndef ENTIS_WLC_HPP
#define ENTIS_WLC_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entis/measures.hpp"
#include "entis/moment_set.hpp"

/**
 * \file
 * \brief Worst-case log-cost WLC_h(μ|π) = sup{Ent(η|μ) : η admissible, Ent(η|π) ≤ h} − h.
 *
 * The grid oracles are brute force and meant for verification on two to four atoms.
 */

namespace entis {

/// Optional moment constraint η(T) ∈ C on top of Ent(η|π) ≤ h.
struct MomentConstraint {
  StatisticTable table;
  ConvexMomentSet set;
};

struct WlcProblem {
  FiniteDistribution reference;
  std::optional<MomentConstraint> admissible;  ///< empty: all distributions
  double h{0.0};
};

enum class WlcMethod { kClosedForm, kGridOracle };

std::string to_string(WlcMethod method);

struct WlcSolution {
  FiniteDistribution proposal;
  double wlc_value{0.0};  ///< sup Ent(η|μ) − h
  FiniteDistribution worst_target;
  WlcMethod method{WlcMethod::kGridOracle};
};

struct WlcValue {
  double value{0.0};  ///< sup Ent(η|μ) − h
  FiniteDistribution worst_target;
};

/**
 * Ray casting from the entropy minimizer through simplex-grid directions to the boundary of the
 * feasible set, then local pattern search around the best rays. Throws EmptyFeasibleSet when
 * h < Ent(μ_∗|π).
 */
WlcValue wlc_value_grid(const WlcProblem& problem, const FiniteDistribution& mu, int grid_resolution = 40);

/// Closed-form two-atom proposal: π, π_h or uniform depending on h.
WlcSolution two_atom_argmin(const FiniteDistribution& pi, double h);

/// Ent(π_h|π) = h on the branch η(larger atom) ∈ [0, π(larger atom)].
FiniteDistribution two_atom_pi_h(const FiniteDistribution& pi, double h);

/// Exact two-atom WLC: the feasible η form an interval and the sup sits at an endpoint.
WlcValue two_atom_wlc(const FiniteDistribution& pi, const FiniteDistribution& mu, double h);

/// Exact minimizer of two_atom_wlc over μ (golden section on a convex objective).
WlcSolution two_atom_minimax(const FiniteDistribution& pi, double h);

/// Minimizes the WLC oracle over a proposal simplex grid, then refines locally.
WlcSolution wlc_argmin_grid(const WlcProblem& problem, int proposal_grid_resolution = 200);

/// Density or function on the unit square.
using SquareFunction = std::function<double(double, double)>;

/**
 * π uniform on [0,1]², T(x,y) = x, C = {η(T) = 1/2}, so μ_∗ = π and h_∗ = 0. In each x-slice
 * the target keeps the upper set of f of conditional mass e^{−h}, ties broken by y.
 */
struct StripTarget {
  double h{0.0};
  double h_star{0.0};
  double slice_fraction{1.0};
  int resolution{0};
  std::vector<double> cell_mass;  ///< η mass per cell, index i·n + j for x-cell i and y-cell j
  std::vector<double> threshold;  ///< per slice: f value of the last (partially) kept cell
  double achieved_entropy{0.0};
  double max_pushforward_error{0.0};
  double eta_f{0.0};
  double pi_f{0.0};
};

/// Throws QuadratureFailure when f varies more within a cell than the grid can resolve.
StripTarget build_strip_target(const SquareFunction& f, double h, int resolution = 1024);

struct StripLowerBoundCheck {
  double slack{0.0};       ///< Ent(η|μ) − h − Ent(μ_∗|μ); must be ≥ 0 up to quadrature error
  double slack_reverse{0.0};  ///< Ent(η|μ) − h − Ent(μ|μ_∗); reported only
  double ent_eta_mu{0.0};
  double ent_pi_mu{0.0};
  double ent_mu_pi{0.0};
};

/// μ is an unnormalized positive density on the unit square; f = clip(ln π/μ, ±50).
StripLowerBoundCheck strip_lower_bound_check(const SquareFunction& mu_density, double h, int resolution = 1024);

}  // namespace entis

#endif
