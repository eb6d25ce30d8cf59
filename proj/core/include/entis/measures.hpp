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

#ifndef ENTIS_MEASURES_HPP
#define ENTIS_MEASURES_HPP

#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "entis/rng.hpp"

/**
 * \file
 * \brief Probability objects shared by every module: finite distributions, weighted ensembles,
 * statistics and sampleable models.
 */

namespace entis {

using Point = Eigen::VectorXd;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Numerically stable `ln Σ exp(v_i)`; returns -inf when every entry is -inf or the span is empty.
double log_sum_exp(std::span<const double> values) noexcept;

/// Probability vector over distinct labeled atoms.
class FiniteDistribution {
 public:
  /// Validates nonnegativity, unit mass within 1e-12 and distinct labels.
  FiniteDistribution(std::vector<std::string> atoms, std::vector<double> probs);

  /// Atoms labeled "0".."n-1".
  explicit FiniteDistribution(std::vector<double> probs);

  /// Normalizes nonnegative weights; at least one must be positive.
  static FiniteDistribution from_weights(std::vector<double> weights);
  static FiniteDistribution from_weights(std::vector<std::string> atoms, std::vector<double> weights);
  static FiniteDistribution uniform(std::size_t n);

  [[nodiscard]] std::size_t size() const noexcept { return probs_.size(); }
  [[nodiscard]] const std::vector<std::string>& atoms() const noexcept { return atoms_; }
  [[nodiscard]] const std::vector<double>& probs() const noexcept { return probs_; }
  [[nodiscard]] double prob(std::size_t i) const { return probs_.at(i); }
  [[nodiscard]] double operator[](std::size_t i) const noexcept { return probs_[i]; }

  /// Index of an atom label, if present.
  [[nodiscard]] std::optional<std::size_t> index_of(const std::string& atom) const;

  /// Same labels in the same order.
  [[nodiscard]] bool same_atoms(const FiniteDistribution& other) const noexcept {
    return atoms_ == other.atoms_;
  }

  /// Copy of `other` reordered to this distribution's atom order; throws MismatchedSupport
  /// when the label sets differ.
  [[nodiscard]] FiniteDistribution aligned(const FiniteDistribution& other) const;

  [[nodiscard]] double total_variation(const FiniteDistribution& other) const;

 private:
  std::vector<std::string> atoms_;
  std::vector<double> probs_;
};

/// Tabulated statistic on a finite space: row i holds T(atom i).
using StatisticTable = Matrix;

/// Vector-valued statistic T on ℝ^k points.
class Statistic {
 public:
  using Function = std::function<Vector(const Point&)>;

  Statistic(std::size_t dimension, Function fn, std::optional<double> declared_bound = std::nullopt,
            std::string id = "T");

  /// T(x) = x for points of the given dimension.
  static Statistic identity(std::size_t dimension);

  /// T(i) = table row i, where the point's first coordinate carries the atom index.
  static Statistic tabulated(StatisticTable table, std::string id = "T");

  [[nodiscard]] std::size_t dimension() const noexcept { return dimension_; }
  [[nodiscard]] const std::optional<double>& declared_bound() const noexcept { return bound_; }
  [[nodiscard]] const std::string& id() const noexcept { return id_; }

  [[nodiscard]] Vector operator()(const Point& x) const;

 private:
  std::size_t dimension_;
  Function fn_;
  std::optional<double> bound_;
  std::string id_;
};

/// Reference or target measure that can be sampled and evaluated up to a constant.
class SampleableModel {
 public:
  virtual ~SampleableModel() = default;

  [[nodiscard]] virtual std::size_t dimension() const noexcept = 0;

  /// Deterministic given the rng state.
  [[nodiscard]] virtual Point draw(Rng& rng) const = 0;

  /// Unnormalized log-density with respect to the ambient reference; -inf off the support.
  [[nodiscard]] virtual double log_density(const Point& x) const = 0;

  [[nodiscard]] virtual std::string id() const = 0;
};

/// Isotropic Gaussian N(mean, sd² I), density against Lebesgue measure (normalized).
class GaussianModel final : public SampleableModel {
 public:
  GaussianModel(Vector mean, double sd);
  GaussianModel(double mean, double sd) : GaussianModel(Vector::Constant(1, mean), sd) {}

  [[nodiscard]] std::size_t dimension() const noexcept override { return static_cast<std::size_t>(mean_.size()); }
  [[nodiscard]] Point draw(Rng& rng) const override;
  [[nodiscard]] double log_density(const Point& x) const override;
  [[nodiscard]] std::string id() const override;

  [[nodiscard]] const Vector& mean() const noexcept { return mean_; }
  [[nodiscard]] double sd() const noexcept { return sd_; }

 private:
  Vector mean_;
  double sd_;
};

/// A finite distribution embedded in ℝ: points carry the atom index in their only coordinate,
/// log-density is against counting measure.
class CategoricalModel final : public SampleableModel {
 public:
  explicit CategoricalModel(FiniteDistribution dist);

  [[nodiscard]] std::size_t dimension() const noexcept override { return 1; }
  [[nodiscard]] Point draw(Rng& rng) const override;
  [[nodiscard]] double log_density(const Point& x) const override;
  [[nodiscard]] std::string id() const override { return "categorical"; }

  [[nodiscard]] std::size_t draw_index(Rng& rng) const;
  [[nodiscard]] const FiniteDistribution& distribution() const noexcept { return dist_; }

 private:
  FiniteDistribution dist_;
  std::vector<double> cumulative_;
};

/// Importance sampling output: points with unnormalized log-weights.
class WeightedEnsemble {
 public:
  WeightedEnsemble(std::vector<Point> points, std::vector<double> log_weights);

  /// Equally weighted points (log-weight 0).
  explicit WeightedEnsemble(std::vector<Point> points);

  [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
  [[nodiscard]] std::size_t dimension() const noexcept {
    return static_cast<std::size_t>(points_.front().size());
  }
  [[nodiscard]] const std::vector<Point>& points() const noexcept { return points_; }
  [[nodiscard]] const std::vector<double>& log_weights() const noexcept { return log_weights_; }

 private:
  void validate() const;

  std::vector<Point> points_;
  std::vector<double> log_weights_;
};

/// Shifts log-weights so that their log-sum-exp is zero.
WeightedEnsemble normalize(const WeightedEnsemble& ensemble);

/// W^n = exp(ℓ_n) / Σ exp(ℓ).
std::vector<double> normalized_weights(const WeightedEnsemble& ensemble);
std::vector<double> normalized_weights(std::span<const double> log_weights);

/// Self-normalized estimate Σ W^n T(X_n).
Vector empirical_mean(const WeightedEnsemble& ensemble, const Statistic& stat);

/// Self-normalized mean of precomputed statistic rows (one row per point).
Vector empirical_mean(std::span<const double> log_weights, const Matrix& values);

/// (Σ w)² / Σ w², in [1, N].
double effective_sample_size(const WeightedEnsemble& ensemble);
double effective_sample_size(std::span<const double> log_weights);

}  // namespace entis

#endif
