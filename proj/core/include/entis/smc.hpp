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

#ifndef ENTIS_SMC_HPP
#define ENTIS_SMC_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "entis/measures.hpp"
#include "entis/rng.hpp"

/**
 * \file
 * \brief Tempered SMC from π to μ_β ∝ e^{⟨β,T⟩} π along a fixed ladder λ₀=0 < … < λ_K=1.
 */

namespace entis {

/// The tempered law π·e^{λ⟨β,T⟩} seen by a move kernel.
struct TemperedTarget {
  const SampleableModel& pi;
  const Statistic& statistic;
  const Vector& beta;
  double lambda;

  [[nodiscard]] double energy(const Point& x) const { return beta.dot(statistic(x)); }
};

class MoveKernel {
 public:
  virtual ~MoveKernel() = default;

  /// Moves every particle `steps` times, keeping the tempered law invariant. `energy[n]` holds
  /// ⟨β,T(x_n)⟩ and is kept in sync. Returns the acceptance rate.
  virtual double move(std::vector<Point>& points, std::vector<double>& energy, const TemperedTarget& target,
                      int steps, Rng& rng) = 0;

  /// Fresh copy with the initial adaptation state; replicas never share kernel state.
  [[nodiscard]] virtual std::unique_ptr<MoveKernel> clone() const = 0;
};

/// Gaussian random-walk Metropolis; the scale is rescaled after each stage toward 30–50% acceptance.
class RandomWalkKernel final : public MoveKernel {
 public:
  explicit RandomWalkKernel(double initial_scale = 1.0);

  double move(std::vector<Point>& points, std::vector<double>& energy, const TemperedTarget& target, int steps,
              Rng& rng) override;
  [[nodiscard]] std::unique_ptr<MoveKernel> clone() const override;

  [[nodiscard]] double scale() const noexcept { return scale_; }

 private:
  double initial_scale_;
  double scale_;
};

/// Independence Metropolis with π as proposal; works for any sampleable π including categorical.
class IndependenceKernel final : public MoveKernel {
 public:
  double move(std::vector<Point>& points, std::vector<double>& energy, const TemperedTarget& target, int steps,
              Rng& rng) override;
  [[nodiscard]] std::unique_ptr<MoveKernel> clone() const override;
};

enum class ResamplingScheme { kSystematic, kMultinomial };

std::vector<double> uniform_ladder(int stages);

struct SmcConfig {
  std::size_t particle_count{1000};
  std::vector<double> temperature_ladder{uniform_ladder(20)};
  double ess_threshold{0.5};
  std::shared_ptr<const MoveKernel> move_kernel;  ///< none: annealed IS with resampling
  int move_steps{1};
  ResamplingScheme resampling{ResamplingScheme::kSystematic};
  int replicas{1};

  /// Throws InvalidArgument on a malformed ladder, threshold or count.
  void validate() const;
};

struct StageDiagnostic {
  int stage{0};
  double lambda{0.0};
  double ess{0.0};
  bool resampled{false};
  std::optional<double> acceptance;  ///< empty without a move kernel
};

struct SmcResult {
  WeightedEnsemble ensemble;
  double log_z_estimate{0.0};
  std::optional<double> log_z_std_error;  ///< sd/√R over replicas; empty for R = 1
  std::vector<double> replica_log_z;
  std::vector<StageDiagnostic> stage_diagnostics;  ///< replica 0
  std::vector<std::string> warnings;
};

/**
 * ln Ẑ = Σ_k ln Σ_n W_n^{k} exp((λ_k − λ_{k−1})⟨β,T(X_n)⟩) with the incremental weights taken before
 * any resampling. The returned ensemble and diagnostics belong to replica 0. Throws
 * AllWeightsDegenerate when a stage leaves no finite weight.
 */
SmcResult run_smc(const SampleableModel& pi, const Statistic& statistic, const Vector& beta, const SmcConfig& cfg,
                  Rng& rng);

/// N equally weighted points; one uniform draw drives the sweep.
WeightedEnsemble systematic_resample(const WeightedEnsemble& ensemble, Rng& rng);

WeightedEnsemble multinomial_resample(const WeightedEnsemble& ensemble, Rng& rng);

/// Ancestor indices, exposed for tests of the replication counts.
std::vector<std::size_t> systematic_indices(std::span<const double> weights, std::size_t count, Rng& rng);
std::vector<std::size_t> multinomial_indices(std::span<const double> weights, std::size_t count, Rng& rng);

}  // namespace entis

#endif
