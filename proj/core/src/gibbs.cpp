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

#include "entis/gibbs.hpp"

#include <algorithm>
#include <cmath>

#include "entis/entropy.hpp"
#include "entis/errors.hpp"

namespace entis {

namespace {

std::vector<double> tilted_log_weights(const std::vector<double>& log_reference, const StatisticTable& table,
                                       const Vector& beta) {
  if (beta.size() != table.cols()) {
    throw Error(ErrorKind::kInvalidArgument, "beta dimension does not match the statistic");
  }
  const Vector energy = table * beta;
  std::vector<double> out(log_reference.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = log_reference[i] == kNegInf ? kNegInf : log_reference[i] + energy(static_cast<Eigen::Index>(i));
  }
  return out;
}

double statistic_scale(const StatisticTable& table) {
  return std::max(1.0, table.size() > 0 ? table.cwiseAbs().maxCoeff() : 0.0);
}

// Dual objective A(β) − ⟨β,t⟩ together with its gradient and Hessian.
struct DualState {
  double value;
  Vector gradient;
  Matrix hessian;
};

DualState dual_state(const GibbsFamily& family, const Vector& beta, const Vector& t0) {
  return DualState{family.log_partition(beta) - beta.dot(t0), family.moment(beta) - t0,
                   family.covariance(beta)};
}

bool is_infeasible_kind(const Error& e) {
  return e.kind() == ErrorKind::kInfeasibleMoment || e.kind() == ErrorKind::kDegenerateTilt ||
         e.kind() == ErrorKind::kSingularHessian;
}

}  // namespace

GibbsFamily::GibbsFamily(FiniteDistribution reference, StatisticTable table, std::string statistic_id,
                         std::string reference_id)
    : reference_(std::move(reference)),
      table_(std::move(table)),
      statistic_id_(std::move(statistic_id)),
      reference_id_(std::move(reference_id)) {
  if (static_cast<std::size_t>(table_.rows()) != reference_->size() || table_.cols() == 0) {
    throw Error(ErrorKind::kInvalidArgument, "statistic table needs one row per atom and d > 0 columns");
  }
  if (!table_.allFinite()) {
    throw Error(ErrorKind::kInvalidArgument, "statistic values must be finite");
  }
  log_reference_.resize(reference_->size());
  for (std::size_t i = 0; i < reference_->size(); ++i) {
    const double p = (*reference_)[i];
    log_reference_[i] = p > 0.0 ? std::log(p) : kNegInf;
  }
}

GibbsFamily GibbsFamily::from_ensemble(const WeightedEnsemble& ensemble, const Statistic& statistic,
                                       std::string reference_id) {
  GibbsFamily family;
  const auto normalized = normalize(ensemble);
  family.log_reference_ = normalized.log_weights();
  family.table_.resize(static_cast<Eigen::Index>(ensemble.size()), static_cast<Eigen::Index>(statistic.dimension()));
  for (std::size_t n = 0; n < ensemble.size(); ++n) {
    family.table_.row(static_cast<Eigen::Index>(n)) = statistic(ensemble.points()[n]).transpose();
  }
  if (!family.table_.allFinite()) {
    throw Error(ErrorKind::kInvalidArgument, "statistic values must be finite");
  }
  family.statistic_id_ = statistic.id();
  family.reference_id_ = std::move(reference_id);
  family.sample_based_ = true;
  return family;
}

const FiniteDistribution& GibbsFamily::reference() const {
  if (!reference_) {
    throw Error(ErrorKind::kInvalidArgument, "sample-based family has no exact reference distribution");
  }
  return *reference_;
}

double GibbsFamily::log_partition(const Vector& beta) const {
  return log_sum_exp(tilted_log_weights(log_reference_, table_, beta));
}

std::vector<double> GibbsFamily::tilted_probs(const Vector& beta) const {
  return normalized_weights(tilted_log_weights(log_reference_, table_, beta));
}

Vector GibbsFamily::moment(const Vector& beta) const {
  const auto p = tilted_probs(beta);
  std::size_t support = 0;
  std::size_t positive = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    support += log_reference_[i] != kNegInf ? 1 : 0;
    positive += p[i] > 0.0 ? 1 : 0;
  }
  if (positive == 1 && support > 1) {
    throw Error(ErrorKind::kDegenerateTilt, "tilted mass collapsed onto a single atom");
  }
  Vector m = Vector::Zero(table_.cols());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) {
      m += p[i] * table_.row(static_cast<Eigen::Index>(i)).transpose();
    }
  }
  return m;
}

Matrix GibbsFamily::covariance(const Vector& beta) const {
  const auto p = tilted_probs(beta);
  Vector m = Vector::Zero(table_.cols());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) {
      m += p[i] * table_.row(static_cast<Eigen::Index>(i)).transpose();
    }
  }
  Matrix cov = Matrix::Zero(table_.cols(), table_.cols());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) {
      const Vector c = table_.row(static_cast<Eigen::Index>(i)).transpose() - m;
      cov.noalias() += p[i] * c * c.transpose();
    }
  }
  return cov;
}

std::pair<Vector, Vector> GibbsFamily::statistic_range() const {
  Vector lo = Vector::Constant(table_.cols(), kInf);
  Vector hi = Vector::Constant(table_.cols(), kNegInf);
  for (std::size_t i = 0; i < log_reference_.size(); ++i) {
    if (log_reference_[i] == kNegInf) {
      continue;
    }
    const auto row = table_.row(static_cast<Eigen::Index>(i)).transpose();
    lo = lo.cwiseMin(row);
    hi = hi.cwiseMax(row);
  }
  return {lo, hi};
}

GibbsParameters GibbsModel::parameters() const {
  return GibbsParameters{beta, log_partition, family->statistic_id(), family->reference_id()};
}

FiniteDistribution GibbsModel::distribution() const {
  const auto& ref = family->reference();
  return FiniteDistribution::from_weights(ref.atoms(), family->tilted_probs(beta));
}

GibbsModel make_gibbs_model(std::shared_ptr<const GibbsFamily> family, Vector beta) {
  GibbsModel model{std::move(family), std::move(beta), {}};
  const auto& fam = *model.family;
  const auto log_weights = tilted_log_weights(fam.log_reference(), fam.table(), model.beta);
  model.log_partition.value = log_sum_exp(log_weights);
  if (fam.sample_based()) {
    // Delta method: Var(Ẑ) ≈ Σ W_n² (e_n − Ẑ)² with e_n = exp⟨β,T_n⟩.
    const double shift = model.log_partition.value;
    double var = 0.0;
    for (std::size_t n = 0; n < log_weights.size(); ++n) {
      if (fam.log_reference()[n] == kNegInf) {
        continue;
      }
      const double w = std::exp(fam.log_reference()[n]);
      const double e = std::exp(log_weights[n] - fam.log_reference()[n] - shift);
      var += w * w * (e - 1.0) * (e - 1.0);
    }
    model.log_partition.std_error = std::sqrt(var);
  }
  return model;
}

double log_partition_finite(const FiniteDistribution& pi, const StatisticTable& table, const Vector& beta) {
  return GibbsFamily(pi, table).log_partition(beta);
}

MomentEstimate moment_map(const GibbsModel& model) {
  const auto& fam = *model.family;
  MomentEstimate estimate{fam.moment(model.beta), std::nullopt};
  if (fam.sample_based()) {
    const auto p = fam.tilted_probs(model.beta);
    Vector var = Vector::Zero(static_cast<Eigen::Index>(fam.dimension()));
    for (std::size_t n = 0; n < p.size(); ++n) {
      const Vector c = fam.table().row(static_cast<Eigen::Index>(n)).transpose() - estimate.value;
      var += (p[n] * p[n]) * c.cwiseProduct(c);
    }
    estimate.std_error = var.cwiseSqrt();
  }
  return estimate;
}

GibbsModel solve_linear_family(std::shared_ptr<const GibbsFamily> family, const Vector& t0,
                               const SolverOptions& options, const Vector* warm_start) {
  const GibbsFamily& fam = *family;
  const auto d = static_cast<Eigen::Index>(fam.dimension());
  if (t0.size() != d) {
    throw Error(ErrorKind::kInvalidArgument, "target moment dimension does not match the statistic");
  }
  const double scale = statistic_scale(fam.table());
  const auto [lo, hi] = fam.statistic_range();
  if ((t0.array() < lo.array() - 1e-12 * scale).any() || (t0.array() > hi.array() + 1e-12 * scale).any()) {
    throw Error(ErrorKind::kInfeasibleMoment, "target moment lies outside the range of T");
  }
  {
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(fam.covariance(Vector::Zero(d)), Eigen::EigenvaluesOnly);
    const double top = eig.eigenvalues().maxCoeff();
    if (!(top > 0.0) || eig.eigenvalues().minCoeff() <= 1e-12 * top) {
      throw Error(ErrorKind::kSingularHessian, "components of T are affinely dependent on the support");
    }
  }

  Vector beta = warm_start != nullptr ? *warm_start : Vector::Zero(d);
  Vector best_beta = beta;
  double best_norm = kInf;
  const double tight = 1e-15 * scale;

  try {
    for (int it = 0; it < options.max_iterations; ++it) {
      const auto state = dual_state(fam, beta, t0);
      const double grad_norm = state.gradient.lpNorm<Eigen::Infinity>();
      if (grad_norm < best_norm) {
        best_norm = grad_norm;
        best_beta = beta;
      }
      if (grad_norm <= tight) {
        break;
      }
      const Vector step = state.hessian.ldlt().solve(-state.gradient);
      if (!step.allFinite()) {
        break;
      }
      if (grad_norm < 1e-7 * scale) {
        // Quadratic convergence region: take full steps while the gradient keeps shrinking.
        const Vector candidate = beta + step;
        const double next = (fam.moment(candidate) - t0).lpNorm<Eigen::Infinity>();
        if (next >= grad_norm) {
          break;
        }
        beta = candidate;
      } else {
        const double slope = state.gradient.dot(step);
        // A collapsed tilt has a near-zero Hessian and an enormous Newton step, so backtrack until
        // the step itself, not the fraction, becomes negligible.
        const double floor = 1e-14 * (1.0 + beta.norm());
        double t = 1.0;
        Vector candidate = beta + step;
        bool accepted = false;
        while (t * step.norm() >= floor) {
          if (fam.log_partition(candidate) - candidate.dot(t0) <= state.value + 1e-4 * t * slope) {
            accepted = true;
            break;
          }
          t *= 0.5;
          candidate = beta + t * step;
        }
        if (!accepted) {
          break;
        }
        beta = candidate;
      }
      if (beta.norm() > options.divergence_norm) {
        throw Error(ErrorKind::kInfeasibleMoment, "natural parameter diverged; target is not an interior moment");
      }
    }
    const double final_norm = (fam.moment(beta) - t0).lpNorm<Eigen::Infinity>();
    if (final_norm < best_norm) {
      best_norm = final_norm;
      best_beta = beta;
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kDegenerateTilt) {
      throw Error(ErrorKind::kInfeasibleMoment, "tilt collapsed onto one atom; target is on the hull boundary");
    }
    throw;
  }

  if (!(best_norm <= options.tolerance)) {
    throw Error(ErrorKind::kInfeasibleMoment, "Newton did not reach the target moment");
  }
  return make_gibbs_model(std::move(family), best_beta);
}

GibbsModel solve_linear_family(const FiniteDistribution& pi, const StatisticTable& table, const Vector& t0,
                               const SolverOptions& options) {
  return solve_linear_family(std::make_shared<const GibbsFamily>(pi, table), t0, options);
}

namespace {

// Linear-family solve on the active constraint rows; β = Aᵀλ with λ ≤ 0 on one-sided rows.
std::optional<GibbsModel> polish_active_set(const std::shared_ptr<const GibbsFamily>& family,
                                            const ConvexMomentSet& set, const Vector& t,
                                            const SolverOptions& options) {
  const auto [a, b] = set.inequalities();
  std::vector<Eigen::Index> rows;
  std::vector<bool> two_sided;
  for (Eigen::Index k = 0; k < a.rows(); ++k) {
    const double gap = b(k) - a.row(k).dot(t);
    if (std::abs(gap) > 1e-7 * (1.0 + std::abs(b(k)))) {
      continue;
    }
    bool duplicate = false;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      const auto other = a.row(rows[j]);
      const double cosine = other.dot(a.row(k)) / (other.norm() * a.row(k).norm());
      if (std::abs(std::abs(cosine) - 1.0) < 1e-12) {
        duplicate = true;
        two_sided[j] = two_sided[j] || cosine < 0.0;
      }
    }
    if (!duplicate) {
      rows.push_back(k);
      two_sided.push_back(false);
    }
  }

  while (!rows.empty()) {
    const auto k = static_cast<Eigen::Index>(rows.size());
    Matrix active(k, a.cols());
    Vector targets(k);
    for (Eigen::Index j = 0; j < k; ++j) {
      active.row(j) = a.row(rows[static_cast<std::size_t>(j)]);
      targets(j) = b(rows[static_cast<std::size_t>(j)]);
    }
    StatisticTable reduced = family->table() * active.transpose();
    std::shared_ptr<const GibbsFamily> sub;
    if (family->sample_based()) {
      return std::nullopt;
    }
    sub = std::make_shared<const GibbsFamily>(family->reference(), std::move(reduced));
    Vector lambda;
    try {
      lambda = solve_linear_family(sub, targets, options).beta;
    } catch (const Error& e) {
      if (!is_infeasible_kind(e)) {
        throw;
      }
      return std::nullopt;
    }
    // Drop the one-sided row with the most positive multiplier, if any.
    Eigen::Index worst = -1;
    double worst_value = 1e-12;
    for (Eigen::Index j = 0; j < k; ++j) {
      if (!two_sided[static_cast<std::size_t>(j)] && lambda(j) > worst_value) {
        worst_value = lambda(j);
        worst = j;
      }
    }
    if (worst >= 0) {
      rows.erase(rows.begin() + worst);
      two_sided.erase(two_sided.begin() + worst);
      continue;
    }
    Vector beta = active.transpose() * lambda;
    const Vector moment = family->moment(beta);
    if (!set.contains(moment, 1e-9 * statistic_scale(family->table()))) {
      return std::nullopt;
    }
    return make_gibbs_model(family, std::move(beta));
  }
  return std::nullopt;
}

}  // namespace

namespace {

// Dual fallback for when Proj_C(π(T)) is not an interior moment. For C = {A t ≤ b} the dual
// g(λ) = −ln Z(−Aᵀλ) − ⟨λ,b⟩ over λ ≥ 0 is smooth and concave and never leaves the family, so a
// projected Newton ascent reaches C ∩ hull whenever it is nonempty.
GibbsModel solve_dual_polyhedral(const std::shared_ptr<const GibbsFamily>& family, const ConvexMomentSet& set,
                                 const SolverOptions& options) {
  const GibbsFamily& fam = *family;
  const auto [a, b] = set.inequalities();
  const double scale = statistic_scale(fam.table());
  const double tol = options.tolerance * scale;
  const auto dual = [&](const Vector& lambda) {
    return -fam.log_partition(-a.transpose() * lambda) - lambda.dot(b);
  };
  // Projected-gradient violation: KKT residual of the bound-constrained dual.
  const auto violation_of = [&](const Vector& lambda, const Vector& grad) {
    double v = 0.0;
    for (Eigen::Index k = 0; k < a.rows(); ++k) {
      v = std::max(v, lambda(k) <= 0.0 ? std::max(grad(k), 0.0) : std::abs(grad(k)));
    }
    return v;
  };
  Vector lambda = Vector::Zero(a.rows());
  double value = dual(lambda);
  Vector best = lambda;
  double best_violation = kInf;
  for (int it = 0; it < 50 * options.max_iterations; ++it) {
    const Vector beta = -a.transpose() * lambda;
    const Vector grad = a * fam.moment(beta) - b;
    const double violation = violation_of(lambda, grad);
    if (violation < best_violation) {
      best_violation = violation;
      best = lambda;
    }
    if (violation <= tol) {
      return make_gibbs_model(family, beta);
    }
    std::vector<Eigen::Index> free;
    for (Eigen::Index k = 0; k < a.rows(); ++k) {
      if (lambda(k) > 0.0 || grad(k) > 0.0) {
        free.push_back(k);
      }
    }
    if (lambda.norm() > options.divergence_norm) {
      break;
    }
    const auto f = static_cast<Eigen::Index>(free.size());
    Matrix af(f, a.cols());
    Vector gf(f);
    for (Eigen::Index j = 0; j < f; ++j) {
      af.row(j) = a.row(free[static_cast<std::size_t>(j)]);
      gf(j) = grad(free[static_cast<std::size_t>(j)]);
    }
    Matrix h = af * fam.covariance(beta) * af.transpose();
    h.diagonal().array() += 1e-12 * (1.0 + h.diagonal().maxCoeff());
    const Vector df = h.ldlt().solve(gf);
    Vector direction = Vector::Zero(a.rows());
    for (Eigen::Index j = 0; j < f; ++j) {
      direction(free[static_cast<std::size_t>(j)]) = df(j);
    }
    if (violation < 1e-7 * scale) {
      // Dual values no longer resolve the ascent here; take full steps while the residual shrinks.
      const Vector trial = (lambda + direction).cwiseMax(0.0);
      const Vector trial_grad = a * fam.moment(-a.transpose() * trial) - b;
      if (!(violation_of(trial, trial_grad) < violation)) {
        break;
      }
      lambda = trial;
      value = dual(lambda);
      continue;
    }
    double step = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 60; ++ls, step *= 0.5) {
      const Vector trial = (lambda + step * direction).cwiseMax(0.0);
      const double trial_value = dual(trial);
      if (std::isfinite(trial_value) && trial_value >= value + 1e-4 * grad.dot(trial - lambda)) {
        lambda = trial;
        value = trial_value;
        moved = true;
        break;
      }
    }
    if (!moved) {
      // Newton direction stalled on an ill-conditioned face; take a projected gradient step instead.
      const Vector trial = (lambda + grad / (1.0 + h.diagonal().maxCoeff())).cwiseMax(0.0);
      if (!(dual(trial) > value)) {
        break;
      }
      lambda = trial;
      value = dual(trial);
    }
  }
  if (best_violation < 1e-7 * scale) {
    // Close enough for the active-set polish to finish exactly.
    return make_gibbs_model(family, -a.transpose() * best);
  }
  throw Error(ErrorKind::kInfeasibleMoment, "moment set does not meet the interior of the statistic hull");
}

// Ball C = B(c, r): g(β) = −ln Z(β) + ⟨β,c⟩ − r‖β‖, smooth and concave away from β = 0.
GibbsModel solve_dual_ball(const std::shared_ptr<const GibbsFamily>& family, const ConvexMomentSet& set,
                           const SolverOptions& options) {
  const GibbsFamily& fam = *family;
  const Vector& c = set.center();
  const double r = set.radius();
  const double tol = options.tolerance * statistic_scale(fam.table());
  const auto dual = [&](const Vector& beta) { return -fam.log_partition(beta) + beta.dot(c) - r * beta.norm(); };
  Vector beta = c - fam.reference_moment();
  beta *= 1e-3 / beta.norm();
  double value = dual(beta);
  for (int it = 0; it < 50 * options.max_iterations; ++it) {
    const double norm = beta.norm();
    const Vector unit = beta / norm;
    const Vector grad = c - r * unit - fam.moment(beta);
    if (grad.lpNorm<Eigen::Infinity>() <= tol) {
      return make_gibbs_model(family, beta);
    }
    if (norm > options.divergence_norm) {
      break;
    }
    Matrix h = fam.covariance(beta);
    h += (r / norm) * (Matrix::Identity(beta.size(), beta.size()) - unit * unit.transpose());
    const Vector direction = h.ldlt().solve(grad);
    double step = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 60; ++ls, step *= 0.5) {
      const Vector trial = beta + step * direction;
      const double trial_value = dual(trial);
      if (trial.norm() > 0.0 && std::isfinite(trial_value) && trial_value >= value + 1e-4 * step * grad.dot(direction)) {
        beta = trial;
        value = trial_value;
        moved = true;
        break;
      }
    }
    if (!moved) {
      break;
    }
  }
  throw Error(ErrorKind::kInfeasibleMoment, "moment ball does not meet the interior of the statistic hull");
}

}  // namespace

GibbsModel solve_convex_constraint(std::shared_ptr<const GibbsFamily> family, const ConvexMomentSet& set,
                                   const SolverOptions& options) {
  const GibbsFamily& fam = *family;
  if (set.dimension() != fam.dimension()) {
    throw Error(ErrorKind::kInvalidArgument, "moment set dimension does not match the statistic");
  }
  const double scale = statistic_scale(fam.table());
  const Vector reference_moment = fam.reference_moment();
  if (set.contains(reference_moment, 1e-12 * scale)) {
    return make_gibbs_model(family, Vector::Zero(static_cast<Eigen::Index>(fam.dimension())));
  }
  if (set.kind() == ConvexMomentSet::Kind::kSingleton) {
    return solve_linear_family(family, set.center(), options);
  }

  if (set.is_polyhedral()) {
    const GibbsModel dual = solve_dual_polyhedral(family, set, options);
    if (auto polished = polish_active_set(family, set, fam.moment(dual.beta), options)) {
      return *std::move(polished);
    }
    return dual;
  }

  Vector t = set.project(reference_moment);
  GibbsModel model;
  try {
    model = solve_linear_family(family, t, options);
  } catch (const Error& e) {
    if (!is_infeasible_kind(e)) {
      throw;
    }
    // The nearest point of C to π(T) lies outside the hull of T; the dual does not need it.
    return solve_dual_ball(family, set, options);
  }
  // Λ*(t) = ⟨β(t), t⟩ − A(β(t)) is the entropy of μ_{β(t)}; its gradient in t is β(t).
  double value = model.beta.dot(t) - model.log_partition.value;
  double gamma = 0.0;
  {
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(fam.covariance(model.beta), Eigen::EigenvaluesOnly);
    gamma = std::max(eig.eigenvalues().minCoeff(), 1e-12);
  }

  bool converged = false;
  for (int it = 0; it < options.max_iterations && !converged; ++it) {
    const Vector next = set.project(t - gamma * model.beta);
    const Vector delta = next - t;
    if (delta.lpNorm<Eigen::Infinity>() <= options.step_tolerance) {
      converged = true;
      break;
    }
    GibbsModel candidate;
    try {
      candidate = solve_linear_family(family, next, options, &model.beta);
    } catch (const Error& e) {
      if (!is_infeasible_kind(e)) {
        throw;
      }
      gamma *= 0.5;
      continue;
    }
    const double candidate_value = candidate.beta.dot(next) - candidate.log_partition.value;
    const double bound = value + model.beta.dot(delta) + delta.squaredNorm() / (2.0 * gamma);
    if (candidate_value > bound + 1e-15 * (1.0 + std::abs(value))) {
      gamma *= 0.5;
      continue;
    }
    t = next;
    model = std::move(candidate);
    value = candidate_value;
    gamma *= 1.25;
  }
  if (!converged) {
    throw Error(ErrorKind::kMaxIterations, "projected moment iteration did not converge");
  }

  return model;
}

GibbsModel solve_convex_constraint(const FiniteDistribution& pi, const StatisticTable& table,
                                   const ConvexMomentSet& set, const SolverOptions& options) {
  return solve_convex_constraint(std::make_shared<const GibbsFamily>(pi, table), set, options);
}

double first_order_slack(const GibbsModel& model, const ConvexMomentSet& set, Rng& rng, int probes) {
  const Vector moment = model.family->moment(model.beta);
  double slack = kInf;
  for (int i = 0; i < probes; ++i) {
    slack = std::min(slack, model.beta.dot(set.sample(rng) - moment));
  }
  return slack;
}

double pythagorean_check(const FiniteDistribution& eta, const GibbsModel& mu_star, const FiniteDistribution& pi) {
  const auto mu = mu_star.distribution();
  return relative_entropy_finite(eta, pi) - relative_entropy_finite(eta, mu) - relative_entropy_finite(mu, pi);
}

}  // namespace entis
