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

#include "entis/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "entis/errors.hpp"

namespace entis {

namespace {

struct Draws {
  std::vector<std::size_t> atoms;
  std::vector<double> log_weights;
  Matrix values;  ///< T of each draw, one row per draw
};

Draws draw_weighted(const GibbsFamily& family, const Vector& beta, const std::vector<double>& target_log,
                    std::size_t samples, Rng& rng) {
  if (target_log.size() != family.atoms()) {
    throw Error(ErrorKind::kInvalidArgument, "target log density needs one entry per atom");
  }
  if (samples == 0) {
    throw Error(ErrorKind::kInvalidArgument, "sample count must be positive");
  }
  const auto probs = family.tilted_probs(beta);
  std::vector<double> cdf(probs.size());
  std::partial_sum(probs.begin(), probs.end(), cdf.begin());
  const double log_z = family.log_partition(beta);
  const Vector energy = family.table() * beta;

  Draws d;
  d.atoms.resize(samples);
  d.log_weights.resize(samples);
  d.values.resize(static_cast<Eigen::Index>(samples), family.table().cols());
  for (std::size_t n = 0; n < samples; ++n) {
    const double u = rng.uniform() * cdf.back();
    auto i = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    i = std::min(i, probs.size() - 1);
    while (probs[i] <= 0.0 && i > 0) {
      --i;
    }
    d.atoms[n] = i;
    const auto row = static_cast<Eigen::Index>(i);
    d.log_weights[n] = target_log[i] - energy(row) + log_z;
    d.values.row(static_cast<Eigen::Index>(n)) = family.table().row(row);
  }
  return d;
}

WeightedEnsemble as_ensemble(const Draws& d) {
  std::vector<Point> points;
  points.reserve(d.atoms.size());
  for (const auto i : d.atoms) {
    points.push_back(Point::Constant(1, static_cast<double>(i)));
  }
  return WeightedEnsemble(std::move(points), d.log_weights);
}

// Self-normalized moment covariance Σ w̃_n² (T_n − m)(T_n − m)ᵀ.
Matrix moment_covariance(const std::vector<double>& w, const Matrix& values, const Vector& mean) {
  Matrix cov = Matrix::Zero(values.cols(), values.cols());
  for (std::size_t n = 0; n < w.size(); ++n) {
    const Vector c = values.row(static_cast<Eigen::Index>(n)).transpose() - mean;
    cov.noalias() += (w[n] * w[n]) * c * c.transpose();
  }
  return cov;
}

CrossEntropyState sampled_state(const CrossEntropyState& state, const Draws& draws, const CrossEntropyOptions& options) {
  CrossEntropyState next;
  next.iteration = state.iteration + 1;
  const auto w = normalized_weights(draws.log_weights);
  next.moment = empirical_mean(draws.log_weights, draws.values);
  next.moment_std_error = moment_covariance(w, draws.values, next.moment).diagonal().cwiseSqrt();
  next.ess = effective_sample_size(draws.log_weights);
  next.ensemble = as_ensemble(draws);
  if (next.ess < options.ess_warning) {
    next.warnings.push_back("effective sample size " + std::to_string(next.ess) + " is below " +
                            std::to_string(options.ess_warning));
  }
  return next;
}

void attach_beta_error(const GibbsFamily& family, const Draws& draws, CrossEntropyState& next) {
  const auto w = normalized_weights(draws.log_weights);
  const Matrix sigma = moment_covariance(w, draws.values, next.moment);
  const Matrix h = family.covariance(next.beta);
  const Eigen::LDLT<Matrix> ldlt(h);
  const Matrix hinv_sigma = ldlt.solve(sigma);
  const Matrix cov = ldlt.solve(hinv_sigma.transpose());
  next.beta_std_error = cov.diagonal().cwiseMax(0.0).cwiseSqrt();
}

bool recoverable(const Error& e) {
  return e.kind() == ErrorKind::kInfeasibleMoment || e.kind() == ErrorKind::kDegenerateTilt;
}

}  // namespace

ConvexMomentSet ConfidenceMomentSet::set() const {
  if ((radius.array() <= 0.0).all()) {
    return ConvexMomentSet::singleton(center);
  }
  return ConvexMomentSet::box(center - radius, center + radius);
}

CrossEntropyState initial_state(const GibbsFamily& family, const Vector& beta0) {
  if (static_cast<std::size_t>(beta0.size()) != family.dimension()) {
    throw Error(ErrorKind::kInvalidArgument, "beta0 dimension does not match the statistic");
  }
  CrossEntropyState state;
  state.beta = beta0;
  state.moment = family.moment(beta0);
  return state;
}

CrossEntropyState ce_step(std::shared_ptr<const GibbsFamily> family, const CrossEntropyState& state,
                          const std::vector<double>& target_log_density, const CrossEntropyOptions& options,
                          Rng& rng) {
  const auto draws = draw_weighted(*family, state.beta, target_log_density, options.samples, rng);
  auto next = sampled_state(state, draws, options);

  try {
    next.beta = solve_linear_family(family, next.moment, options.solver, &state.beta).beta;
  } catch (const Error& e) {
    if (!recoverable(e)) {
      throw;
    }
    // Trust region: pull the target toward the current moment until it is interior.
    const Vector current = family->moment(state.beta);
    double fraction = options.trust_fraction;
    bool solved = false;
    for (int k = 0; k < options.max_trust_halvings && !solved; ++k, fraction *= 0.5) {
      const Vector t = current + fraction * (next.moment - current);
      try {
        next.beta = solve_linear_family(family, t, options.solver, &state.beta).beta;
        solved = true;
      } catch (const Error& inner) {
        if (!recoverable(inner)) {
          throw;
        }
      }
    }
    if (!solved) {
      throw Error(ErrorKind::kInfeasibleMoment, "empirical moment infeasible even after trust-region shrinking");
    }
    next.trust_region_used = true;
    next.warnings.push_back("empirical moment outside the hull; trust-region step used");
  }
  attach_beta_error(*family, draws, next);
  return next;
}

ConfidenceMomentSet confidence_moment_set(const GibbsFamily& family, const WeightedEnsemble& ensemble,
                                          double z_multiplier, int bootstrap, Rng& rng) {
  if (!(z_multiplier >= 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "z multiplier must be nonnegative");
  }
  const std::size_t n = ensemble.size();
  Matrix values(static_cast<Eigen::Index>(n), family.table().cols());
  for (std::size_t i = 0; i < n; ++i) {
    const auto atom = static_cast<Eigen::Index>(ensemble.points()[i](0));
    values.row(static_cast<Eigen::Index>(i)) = family.table().row(atom);
  }
  ConfidenceMomentSet out;
  out.center = empirical_mean(ensemble.log_weights(), values);
  out.radius = Vector::Zero(values.cols());
  if (z_multiplier == 0.0 || bootstrap < 2) {
    return out;
  }
  std::vector<double> log_w(n);
  Matrix resampled(static_cast<Eigen::Index>(n), values.cols());
  Vector sum = Vector::Zero(values.cols());
  Vector sum_sq = Vector::Zero(values.cols());
  for (int b = 0; b < bootstrap; ++b) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto pick = static_cast<std::size_t>(rng.uniform() * static_cast<double>(n));
      log_w[i] = ensemble.log_weights()[pick];
      resampled.row(static_cast<Eigen::Index>(i)) = values.row(static_cast<Eigen::Index>(pick));
    }
    const Vector m = empirical_mean(log_w, resampled);
    sum += m;
    sum_sq += m.cwiseProduct(m);
  }
  const double bb = bootstrap;
  const Vector var = ((sum_sq - sum.cwiseProduct(sum) / bb) / (bb - 1.0)).cwiseMax(0.0);
  out.radius = z_multiplier * var.cwiseSqrt();
  return out;
}

CrossEntropyState ce_step_confidence(std::shared_ptr<const GibbsFamily> family, const CrossEntropyState& state,
                                     const std::vector<double>& target_log_density, double z_multiplier,
                                     const CrossEntropyOptions& options, Rng& rng) {
  const auto draws = draw_weighted(*family, state.beta, target_log_density, options.samples, rng);
  auto next = sampled_state(state, draws, options);
  Rng boot = rng.split("bootstrap");
  const auto confidence = confidence_moment_set(*family, *next.ensemble, z_multiplier, options.bootstrap, boot);
  next.beta = solve_convex_constraint(family, confidence.set(), options.solver).beta;
  attach_beta_error(*family, draws, next);
  return next;
}

CrossEntropyRun run_cross_entropy(std::shared_ptr<const GibbsFamily> family,
                                  const std::vector<double>& target_log_density, const Vector& beta0,
                                  const CrossEntropyConfig& cfg, Rng& rng) {
  if (cfg.max_iterations < 1) {
    throw Error(ErrorKind::kInvalidArgument, "max_iterations must be at least 1");
  }
  CrossEntropyRun run;
  run.trajectory.push_back(initial_state(*family, beta0));
  for (int k = 0; k < cfg.max_iterations; ++k) {
    Rng step_rng = rng.split(static_cast<std::uint64_t>(k));
    const auto& current = run.trajectory.back();
    auto next = cfg.confidence
                    ? ce_step_confidence(family, current, target_log_density, cfg.z_multiplier, cfg.options, step_rng)
                    : ce_step(family, current, target_log_density, cfg.options, step_rng);
    const double change = (next.beta - current.beta).lpNorm<Eigen::Infinity>();
    run.trajectory.push_back(std::move(next));
    if (change <= cfg.beta_tolerance) {
      run.converged = true;
      break;
    }
  }
  run.model = make_gibbs_model(family, run.trajectory.back().beta);
  return run;
}

}  // namespace entis
