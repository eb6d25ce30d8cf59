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

#include "entis/wlc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "entis/entropy.hpp"
#include "entis/errors.hpp"
#include "entis/gibbs.hpp"

namespace entis {

namespace {

constexpr int kMaxAtoms = 4;
constexpr int kBisection = 100;

double kl(const Vector& eta, const Vector& mu) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < eta.size(); ++i) {
    if (eta(i) <= 0.0) {
      continue;
    }
    if (mu(i) <= 0.0) {
      return kInf;
    }
    sum += eta(i) * std::log(eta(i) / mu(i));
  }
  return std::max(sum, 0.0);
}

Vector as_vector(const FiniteDistribution& d) {
  return Eigen::Map<const Vector>(d.probs().data(), static_cast<Eigen::Index>(d.size()));
}

FiniteDistribution as_distribution(const FiniteDistribution& like, const Vector& v) {
  std::vector<double> w(v.data(), v.data() + v.size());
  for (double& x : w) {
    x = std::max(x, 0.0);
  }
  return FiniteDistribution::from_weights(like.atoms(), std::move(w));
}

// All points of the simplex grid {k/R : Σk = R} in n dimensions.
std::vector<Vector> simplex_grid(int n, int resolution) {
  std::vector<Vector> out;
  std::vector<int> counts(static_cast<std::size_t>(n), 0);
  const auto recurse = [&](auto&& self, int index, int remaining) -> void {
    if (index == n - 1) {
      counts[static_cast<std::size_t>(index)] = remaining;
      Vector v(n);
      for (int i = 0; i < n; ++i) {
        v(i) = static_cast<double>(counts[static_cast<std::size_t>(i)]) / resolution;
      }
      out.push_back(std::move(v));
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      counts[static_cast<std::size_t>(index)] = k;
      self(self, index + 1, remaining - k);
    }
  };
  recurse(recurse, 0, resolution);
  return out;
}

// Feasible region {η : Ent(η|π) ≤ h, η(T) ∈ C}, convex and containing `center`.
class FeasibleRegion {
 public:
  explicit FeasibleRegion(const WlcProblem& problem) : problem_(problem), pi_(as_vector(problem.reference)) {
    const auto n = static_cast<int>(problem.reference.size());
    if (n < 2 || n > kMaxAtoms) {
      throw Error(ErrorKind::kInvalidArgument, "WLC grid oracle supports 2 to 4 atoms");
    }
    if (!(problem.h >= 0.0) || !std::isfinite(problem.h)) {
      throw Error(ErrorKind::kDomainError, "entropy budget h must be finite and nonnegative");
    }
    if (problem.admissible) {
      if (problem.admissible->table.rows() != n) {
        throw Error(ErrorKind::kInvalidArgument, "statistic table needs one row per atom");
      }
      const auto star = solve_convex_constraint(problem.reference, problem.admissible->table, problem.admissible->set);
      center_ = as_vector(star.distribution());
    } else {
      center_ = pi_;
    }
    h_star_ = kl(center_, pi_);
    if (problem.h < h_star_ - 1e-12) {
      throw Error(ErrorKind::kEmptyFeasibleSet, "entropy budget h is below Ent(mu_star|pi)");
    }
  }

  [[nodiscard]] const Vector& center() const noexcept { return center_; }
  [[nodiscard]] double h_star() const noexcept { return h_star_; }

  [[nodiscard]] bool feasible(const Vector& eta) const {
    if (kl(eta, pi_) > problem_.h) {
      return false;
    }
    if (problem_.admissible) {
      const Vector moment = problem_.admissible->table.transpose() * eta;
      return problem_.admissible->set.contains(moment, 1e-10);
    }
    return true;
  }

  /// Furthest feasible point from the center toward `target` (a point of the simplex).
  [[nodiscard]] std::optional<Vector> boundary(const Vector& target) const {
    const Vector d = target - center_;
    if (d.lpNorm<Eigen::Infinity>() < 1e-15) {
      return std::nullopt;
    }
    double s_max = kInf;
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      if (d(i) < 0.0) {
        s_max = std::min(s_max, center_(i) / -d(i));
      }
    }
    const auto point = [&](double s) {
      Vector eta = (center_ + s * d).cwiseMax(0.0);
      return Vector(eta / eta.sum());
    };
    if (feasible(point(s_max))) {
      return point(s_max);
    }
    double lo = 0.0;
    double hi = s_max;
    for (int it = 0; it < kBisection && hi - lo > 1e-15 * s_max; ++it) {
      const double mid = 0.5 * (lo + hi);
      (feasible(point(mid)) ? lo : hi) = mid;
    }
    return point(lo);
  }

 private:
  const WlcProblem& problem_;
  Vector pi_;
  Vector center_;
  double h_star_{0.0};
};

// Pattern search over a point g of the simplex, moving along e_i − e_j.
template <typename Objective>
std::pair<Vector, double> simplex_pattern_search(Vector g, double value, double step, double min_step,
                                                 Objective&& objective, bool maximize) {
  const auto better = [&](double a, double b) { return maximize ? a > b + 1e-15 : a < b - 1e-15; };
  const Eigen::Index n = g.size();
  while (step > min_step) {
    bool improved = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (i == j || g(j) <= 0.0) {
          continue;
        }
        Vector candidate = g;
        const double move = std::min(step, g(j));
        candidate(i) += move;
        candidate(j) -= move;
        const double v = objective(candidate);
        if (better(v, value)) {
          g = std::move(candidate);
          value = v;
          improved = true;
        }
      }
    }
    if (!improved) {
      step *= 0.5;
    }
  }
  return {g, value};
}

struct KL2 {
  double operator()(double x, double p) const {
    const auto term = [](double a, double b) { return a <= 0.0 ? 0.0 : a * std::log(a / b); };
    if ((x > 0.0 && p <= 0.0) || (x < 1.0 && p >= 1.0)) {
      return kInf;
    }
    return std::max(term(x, p) + term(1.0 - x, 1.0 - p), 0.0);
  }
};

// Root of KL2(x, p) = h on the monotone branch between `from` (KL = 0) and `to`.
double two_atom_branch(double p, double h, double to) {
  const KL2 kl2;
  if (kl2(to, p) <= h) {
    return to;
  }
  double a = p;
  double b = to;
  for (int it = 0; it < 200 && std::abs(b - a) > 1e-15; ++it) {
    const double mid = 0.5 * (a + b);
    (kl2(mid, p) <= h ? a : b) = mid;
  }
  return a;
}

std::size_t larger_atom(const FiniteDistribution& pi) {
  if (pi.size() != 2) {
    throw Error(ErrorKind::kInvalidArgument, "two-atom routine needs exactly two atoms");
  }
  if (std::min(pi[0], pi[1]) <= 0.0) {
    throw Error(ErrorKind::kDegenerateReference, "reference must charge both atoms");
  }
  return pi[0] >= pi[1] ? 0 : 1;
}

FiniteDistribution two_atom_from_big(const FiniteDistribution& pi, std::size_t big, double x) {
  std::vector<double> probs(2);
  probs[big] = x;
  probs[1 - big] = 1.0 - x;
  return FiniteDistribution(pi.atoms(), std::move(probs));
}

}  // namespace

std::string to_string(WlcMethod method) {
  return method == WlcMethod::kClosedForm ? "closed_form" : "grid_oracle";
}

WlcValue wlc_value_grid(const WlcProblem& problem, const FiniteDistribution& mu, int grid_resolution) {
  if (grid_resolution < 1) {
    throw Error(ErrorKind::kInvalidArgument, "grid resolution must be positive");
  }
  const FeasibleRegion region(problem);
  const Vector m = as_vector(problem.reference.aligned(mu));
  const auto n = static_cast<int>(problem.reference.size());

  const auto value_at = [&](const Vector& g) {
    const auto eta = region.boundary(g);
    return eta ? kl(*eta, m) : kl(region.center(), m);
  };

  struct Ray {
    Vector g;
    double value;
  };
  std::vector<Ray> rays;
  for (auto& g : simplex_grid(n, grid_resolution)) {
    const double v = value_at(g);
    rays.push_back({std::move(g), v});
  }
  std::sort(rays.begin(), rays.end(), [](const Ray& a, const Ray& b) { return a.value > b.value; });

  Vector best_g = rays.front().g;
  double best = rays.front().value;
  if (std::isfinite(best)) {
    const std::size_t top = std::min<std::size_t>(5, rays.size());
    for (std::size_t k = 0; k < top; ++k) {
      auto [g, v] = simplex_pattern_search(rays[k].g, rays[k].value, 1.0 / grid_resolution, 1e-10, value_at, true);
      if (v > best) {
        best = v;
        best_g = std::move(g);
      }
    }
  }
  const auto eta = region.boundary(best_g);
  const Vector worst = eta ? *eta : region.center();
  return WlcValue{best - problem.h, as_distribution(problem.reference, worst)};
}

FiniteDistribution two_atom_pi_h(const FiniteDistribution& pi, double h) {
  const auto big = larger_atom(pi);
  const double p = pi[big];
  if (!(h >= 0.0)) {
    throw Error(ErrorKind::kDomainError, "h must be nonnegative");
  }
  return two_atom_from_big(pi, big, two_atom_branch(p, h, 0.0));
}

WlcValue two_atom_wlc(const FiniteDistribution& pi, const FiniteDistribution& mu, double h) {
  const auto big = larger_atom(pi);
  if (!(h >= 0.0)) {
    throw Error(ErrorKind::kDomainError, "h must be nonnegative");
  }
  const double p = pi[big];
  const double m = pi.aligned(mu)[big];
  const KL2 kl2;
  const double a = two_atom_branch(p, h, 0.0);
  const double b = two_atom_branch(p, h, 1.0);
  const double va = kl2(a, m);
  const double vb = kl2(b, m);
  const double x = va >= vb ? a : b;
  return WlcValue{std::max(va, vb) - h, two_atom_from_big(pi, big, x)};
}

WlcSolution two_atom_argmin(const FiniteDistribution& pi, double h) {
  const auto big = larger_atom(pi);
  if (!(h >= 0.0)) {
    throw Error(ErrorKind::kDomainError, "h must be nonnegative");
  }
  const double p = pi[big];
  FiniteDistribution proposal = pi;
  if (h > -std::log(p)) {
    proposal = h >= -std::log(1.0 - p) ? FiniteDistribution(pi.atoms(), {0.5, 0.5}) : two_atom_pi_h(pi, h);
  }
  auto value = two_atom_wlc(pi, proposal, h);
  return WlcSolution{std::move(proposal), value.value, std::move(value.worst_target), WlcMethod::kClosedForm};
}

WlcSolution two_atom_minimax(const FiniteDistribution& pi, double h) {
  const auto big = larger_atom(pi);
  const auto objective = [&](double x) { return two_atom_wlc(pi, two_atom_from_big(pi, big, x), h).value; };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 1e-12;
  double b = 1.0 - 1e-12;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = objective(x1);
  double f2 = objective(x2);
  while (b - a > 1e-13) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = objective(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = objective(x2);
    }
  }
  auto proposal = two_atom_from_big(pi, big, 0.5 * (a + b));
  auto value = two_atom_wlc(pi, proposal, h);
  return WlcSolution{std::move(proposal), value.value, std::move(value.worst_target), WlcMethod::kClosedForm};
}

WlcSolution wlc_argmin_grid(const WlcProblem& problem, int proposal_grid_resolution) {
  if (proposal_grid_resolution < 2) {
    throw Error(ErrorKind::kInvalidArgument, "proposal grid resolution must be at least 2");
  }
  const FeasibleRegion region(problem);
  const auto n = static_cast<int>(problem.reference.size());
  // The feasible boundary does not depend on μ, so cast the rays once.
  const int cloud_resolution = n == 2 ? 1 : (n == 3 ? 60 : 16);
  std::vector<Vector> cloud{region.center()};
  for (const auto& g : simplex_grid(n, cloud_resolution)) {
    if (auto eta = region.boundary(g)) {
      cloud.push_back(std::move(*eta));
    }
  }
  const auto sup = [&](const Vector& mu) {
    double best = kNegInf;
    for (const auto& eta : cloud) {
      best = std::max(best, kl(eta, mu));
    }
    return best;
  };

  Vector best_mu;
  double best = kInf;
  for (auto& mu : simplex_grid(n, proposal_grid_resolution)) {
    const double v = sup(mu);
    if (v < best) {
      best = v;
      best_mu = std::move(mu);
    }
  }
  if (!std::isfinite(best)) {
    throw Error(ErrorKind::kEmptyFeasibleSet, "no proposal has finite worst-case cost");
  }
  std::tie(best_mu, best) =
      simplex_pattern_search(best_mu, best, 1.0 / proposal_grid_resolution, 1e-13, sup, false);

  auto proposal = as_distribution(problem.reference, best_mu);
  auto value = wlc_value_grid(problem, proposal);
  return WlcSolution{std::move(proposal), value.value, std::move(value.worst_target), WlcMethod::kGridOracle};
}

}  // namespace entis
