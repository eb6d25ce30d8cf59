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

#include "entis/smc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "entis/errors.hpp"

namespace entis {

namespace {

constexpr double kStallAcceptance = 0.01;
constexpr int kStallStages = 3;

std::vector<double> cumulative(std::span<const double> weights) {
  std::vector<double> out(weights.size());
  std::partial_sum(weights.begin(), weights.end(), out.begin());
  // Guard against the last sum landing a hair below 1.
  out.back() = std::max(out.back(), 1.0);
  return out;
}

std::size_t locate(const std::vector<double>& cdf, double u) {
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return std::min(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

struct ReplicaOutput {
  std::vector<Point> points;
  std::vector<double> log_weights;
  double log_z{0.0};
  std::vector<StageDiagnostic> stages;
  std::vector<std::string> warnings;
};

ReplicaOutput run_replica(const SampleableModel& pi, const Statistic& statistic, const Vector& beta,
                          const SmcConfig& cfg, Rng rng) {
  const std::size_t n = cfg.particle_count;
  ReplicaOutput out;
  out.points.reserve(n);
  std::vector<double> energy(n);
  Rng init = rng.split("init");
  for (std::size_t i = 0; i < n; ++i) {
    out.points.push_back(pi.draw(init));
    energy[i] = beta.dot(statistic(out.points.back()));
    if (!std::isfinite(energy[i])) {
      throw Error(ErrorKind::kDomainError, "⟨β,T(x)⟩ is not finite at a draw from π");
    }
  }
  out.log_weights.assign(n, 0.0);

  std::unique_ptr<MoveKernel> kernel = cfg.move_kernel ? cfg.move_kernel->clone() : nullptr;
  Rng moves = rng.split("move");
  Rng resampling = rng.split("resample");
  int low_acceptance_run = 0;
  bool stall_reported = false;

  const auto& ladder = cfg.temperature_ladder;
  for (std::size_t k = 1; k < ladder.size(); ++k) {
    const double step = ladder[k] - ladder[k - 1];
    const double before = log_sum_exp(out.log_weights);
    for (std::size_t i = 0; i < n; ++i) {
      out.log_weights[i] += step * energy[i];
    }
    const double after = log_sum_exp(out.log_weights);
    if (!std::isfinite(after)) {
      throw Error(ErrorKind::kAllWeightsDegenerate,
                  "all incremental weights degenerate at stage " + std::to_string(k) + "; refine the ladder");
    }
    out.log_z += after - before;
    // Renormalize so the weights stay O(1) across stages.
    for (double& w : out.log_weights) {
      w -= after;
    }

    StageDiagnostic diag;
    diag.stage = static_cast<int>(k);
    diag.lambda = ladder[k];
    diag.ess = effective_sample_size(out.log_weights);
    if (diag.ess < cfg.ess_threshold * static_cast<double>(n)) {
      const auto weights = normalized_weights(out.log_weights);
      const auto ancestors = cfg.resampling == ResamplingScheme::kSystematic
                                 ? systematic_indices(weights, n, resampling)
                                 : multinomial_indices(weights, n, resampling);
      std::vector<Point> next(n);
      std::vector<double> next_energy(n);
      for (std::size_t i = 0; i < n; ++i) {
        next[i] = out.points[ancestors[i]];
        next_energy[i] = energy[ancestors[i]];
      }
      out.points = std::move(next);
      energy = std::move(next_energy);
      out.log_weights.assign(n, 0.0);
      diag.resampled = true;
    }
    if (kernel) {
      const TemperedTarget target{pi, statistic, beta, ladder[k]};
      diag.acceptance = kernel->move(out.points, energy, target, cfg.move_steps, moves);
      low_acceptance_run = *diag.acceptance < kStallAcceptance ? low_acceptance_run + 1 : 0;
      if (low_acceptance_run >= kStallStages && !stall_reported) {
        out.warnings.push_back("MoveKernelRejectionStall: acceptance below 1% for 3 consecutive stages ending at stage " +
                               std::to_string(k));
        stall_reported = true;
      }
    }
    out.stages.push_back(diag);
  }
  return out;
}

}  // namespace

RandomWalkKernel::RandomWalkKernel(double initial_scale) : initial_scale_(initial_scale), scale_(initial_scale) {
  if (!(initial_scale > 0.0) || !std::isfinite(initial_scale)) {
    throw Error(ErrorKind::kInvalidArgument, "random-walk scale must be positive");
  }
}

double RandomWalkKernel::move(std::vector<Point>& points, std::vector<double>& energy, const TemperedTarget& target,
                              int steps, Rng& rng) {
  std::normal_distribution<double> normal;
  std::size_t accepted = 0;
  std::size_t proposed = 0;
  for (int s = 0; s < steps; ++s) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      Point proposal = points[i];
      for (Eigen::Index j = 0; j < proposal.size(); ++j) {
        proposal(j) += scale_ * normal(rng);
      }
      const double log_pi = target.pi.log_density(proposal);
      ++proposed;
      if (log_pi == kNegInf) {
        continue;
      }
      const double proposal_energy = target.energy(proposal);
      const double log_ratio = log_pi + target.lambda * proposal_energy -
                               (target.pi.log_density(points[i]) + target.lambda * energy[i]);
      if (log_ratio >= 0.0 || std::log(rng.uniform()) < log_ratio) {
        points[i] = std::move(proposal);
        energy[i] = proposal_energy;
        ++accepted;
      }
    }
  }
  const double rate = proposed > 0 ? static_cast<double>(accepted) / static_cast<double>(proposed) : 0.0;
  if (rate < 0.3) {
    scale_ *= 0.7;
  } else if (rate > 0.5) {
    scale_ *= 1.3;
  }
  return rate;
}

std::unique_ptr<MoveKernel> RandomWalkKernel::clone() const {
  return std::make_unique<RandomWalkKernel>(initial_scale_);
}

double IndependenceKernel::move(std::vector<Point>& points, std::vector<double>& energy, const TemperedTarget& target,
                                int steps, Rng& rng) {
  std::size_t accepted = 0;
  std::size_t proposed = 0;
  for (int s = 0; s < steps; ++s) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      Point proposal = target.pi.draw(rng);
      const double proposal_energy = target.energy(proposal);
      const double log_ratio = target.lambda * (proposal_energy - energy[i]);
      ++proposed;
      if (log_ratio >= 0.0 || std::log(rng.uniform()) < log_ratio) {
        points[i] = std::move(proposal);
        energy[i] = proposal_energy;
        ++accepted;
      }
    }
  }
  return proposed > 0 ? static_cast<double>(accepted) / static_cast<double>(proposed) : 0.0;
}

std::unique_ptr<MoveKernel> IndependenceKernel::clone() const { return std::make_unique<IndependenceKernel>(); }

std::vector<double> uniform_ladder(int stages) {
  if (stages < 1) {
    throw Error(ErrorKind::kInvalidArgument, "ladder needs at least one stage");
  }
  std::vector<double> ladder(static_cast<std::size_t>(stages) + 1);
  for (int k = 0; k <= stages; ++k) {
    ladder[static_cast<std::size_t>(k)] = static_cast<double>(k) / stages;
  }
  ladder.back() = 1.0;
  return ladder;
}

void SmcConfig::validate() const {
  if (particle_count == 0) {
    throw Error(ErrorKind::kInvalidArgument, "particle_count must be positive");
  }
  if (!(ess_threshold > 0.0 && ess_threshold <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "ess_threshold must lie in (0, 1]");
  }
  if (temperature_ladder.size() < 2 || temperature_ladder.front() != 0.0 || temperature_ladder.back() != 1.0) {
    throw Error(ErrorKind::kInvalidArgument, "temperature ladder must start at 0 and end at 1");
  }
  for (std::size_t k = 1; k < temperature_ladder.size(); ++k) {
    if (!(temperature_ladder[k] > temperature_ladder[k - 1])) {
      throw Error(ErrorKind::kInvalidArgument, "temperature ladder must be strictly increasing");
    }
  }
  if (move_steps < 1) {
    throw Error(ErrorKind::kInvalidArgument, "move_steps must be at least 1");
  }
  if (replicas < 1) {
    throw Error(ErrorKind::kInvalidArgument, "replicas must be at least 1");
  }
}

SmcResult run_smc(const SampleableModel& pi, const Statistic& statistic, const Vector& beta, const SmcConfig& cfg,
                  Rng& rng) {
  cfg.validate();
  if (static_cast<std::size_t>(beta.size()) != statistic.dimension()) {
    throw Error(ErrorKind::kInvalidArgument, "beta dimension does not match the statistic");
  }
  const Rng base = rng.split(rng());
  std::vector<double> log_z(static_cast<std::size_t>(cfg.replicas));
  std::optional<ReplicaOutput> first;
  for (int r = 0; r < cfg.replicas; ++r) {
    auto out = run_replica(pi, statistic, beta, cfg, base.split(static_cast<std::uint64_t>(r)));
    log_z[static_cast<std::size_t>(r)] = out.log_z;
    if (r == 0) {
      first = std::move(out);
    }
  }

  SmcResult result{WeightedEnsemble(std::move(first->points), std::move(first->log_weights)), 0.0, std::nullopt,
                   log_z, std::move(first->stages), std::move(first->warnings)};
  const double r = static_cast<double>(cfg.replicas);
  result.log_z_estimate = std::accumulate(log_z.begin(), log_z.end(), 0.0) / r;
  if (cfg.replicas > 1) {
    double ss = 0.0;
    for (const double v : log_z) {
      ss += (v - result.log_z_estimate) * (v - result.log_z_estimate);
    }
    result.log_z_std_error = std::sqrt(ss / (r - 1.0) / r);
  }
  return result;
}

std::vector<std::size_t> systematic_indices(std::span<const double> weights, std::size_t count, Rng& rng) {
  const auto cdf = cumulative(weights);
  const double u = rng.uniform();
  std::vector<std::size_t> out(count);
  std::size_t j = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const double position = (static_cast<double>(i) + u) / static_cast<double>(count);
    while (j + 1 < cdf.size() && cdf[j] <= position) {
      ++j;
    }
    out[i] = j;
  }
  return out;
}

std::vector<std::size_t> multinomial_indices(std::span<const double> weights, std::size_t count, Rng& rng) {
  const auto cdf = cumulative(weights);
  std::vector<std::size_t> out(count);
  for (auto& index : out) {
    index = locate(cdf, rng.uniform());
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

WeightedEnsemble gather(const WeightedEnsemble& ensemble, const std::vector<std::size_t>& indices) {
  std::vector<Point> points;
  points.reserve(indices.size());
  for (const auto i : indices) {
    points.push_back(ensemble.points()[i]);
  }
  return WeightedEnsemble(std::move(points));
}

}  // namespace

WeightedEnsemble systematic_resample(const WeightedEnsemble& ensemble, Rng& rng) {
  const auto w = normalized_weights(ensemble);
  return gather(ensemble, systematic_indices(w, ensemble.size(), rng));
}

WeightedEnsemble multinomial_resample(const WeightedEnsemble& ensemble, Rng& rng) {
  const auto w = normalized_weights(ensemble);
  return gather(ensemble, multinomial_indices(w, ensemble.size(), rng));
}

}  // namespace entis
