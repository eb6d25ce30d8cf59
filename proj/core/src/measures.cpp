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

#include "entis/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#include "entis/errors.hpp"

namespace entis {

namespace {

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = std::to_string(i);
  }
  return labels;
}

double max_finite(std::span<const double> values) {
  double m = kNegInf;
  for (const double v : values) {
    m = std::max(m, v);
  }
  return m;
}

void require_normalizable(std::span<const double> log_weights) {
  if (log_weights.empty() || max_finite(log_weights) == kNegInf) {
    throw Error(ErrorKind::kAllWeightsDegenerate, "every log-weight is -inf");
  }
  for (const double v : log_weights) {
    if (std::isnan(v) || v == kInf) {
      throw Error(ErrorKind::kAllWeightsDegenerate, "log-weights contain NaN or +inf");
    }
  }
}

}  // namespace

double log_sum_exp(std::span<const double> values) noexcept {
  const double m = max_finite(values);
  if (m == kNegInf || std::isinf(m)) {
    return m;
  }
  double sum = 0.0;
  for (const double v : values) {
    sum += std::exp(v - m);
  }
  return m + std::log(sum);
}

FiniteDistribution::FiniteDistribution(std::vector<std::string> atoms, std::vector<double> probs)
    : atoms_(std::move(atoms)), probs_(std::move(probs)) {
  if (atoms_.size() != probs_.size()) {
    throw Error(ErrorKind::kInvalidArgument, "atoms and probs differ in length");
  }
  if (probs_.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "empty distribution");
  }
  double total = 0.0;
  for (const double p : probs_) {
    if (!(p >= 0.0) || p > 1.0) {
      throw Error(ErrorKind::kInvalidArgument, "probability outside [0, 1]");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "probabilities sum to " << total;
    throw Error(ErrorKind::kInvalidArgument, msg.str());
  }
  if (std::set<std::string>(atoms_.begin(), atoms_.end()).size() != atoms_.size()) {
    throw Error(ErrorKind::kInvalidArgument, "duplicate atom labels");
  }
}

FiniteDistribution::FiniteDistribution(std::vector<double> probs)
    : FiniteDistribution(default_labels(probs.size()), std::vector<double>(probs)) {}

FiniteDistribution FiniteDistribution::from_weights(std::vector<double> weights) {
  auto labels = default_labels(weights.size());
  return from_weights(std::move(labels), std::move(weights));
}

FiniteDistribution FiniteDistribution::from_weights(std::vector<std::string> atoms,
                                                    std::vector<double> weights) {
  double total = 0.0;
  for (const double w : weights) {
    if (!(w >= 0.0) || std::isinf(w)) {
      throw Error(ErrorKind::kInvalidArgument, "weights must be finite and nonnegative");
    }
    total += w;
  }
  if (!(total > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "weights sum to zero");
  }
  for (double& w : weights) {
    w /= total;
  }
  return FiniteDistribution(std::move(atoms), std::move(weights));
}

FiniteDistribution FiniteDistribution::uniform(std::size_t n) {
  return from_weights(std::vector<double>(n, 1.0));
}

std::optional<std::size_t> FiniteDistribution::index_of(const std::string& atom) const {
  const auto it = std::find(atoms_.begin(), atoms_.end(), atom);
  if (it == atoms_.end()) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - atoms_.begin());
}

FiniteDistribution FiniteDistribution::aligned(const FiniteDistribution& other) const {
  if (same_atoms(other)) {
    return other;
  }
  if (other.size() != size()) {
    throw Error(ErrorKind::kMismatchedSupport, "atom sets differ in size");
  }
  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < other.size(); ++i) {
    position.emplace(other.atoms_[i], i);
  }
  std::vector<double> reordered(size());
  for (std::size_t i = 0; i < size(); ++i) {
    const auto it = position.find(atoms_[i]);
    if (it == position.end()) {
      throw Error(ErrorKind::kMismatchedSupport, "atom '" + atoms_[i] + "' missing");
    }
    reordered[i] = other.probs_[it->second];
  }
  FiniteDistribution result = *this;
  result.probs_ = std::move(reordered);
  return result;
}

double FiniteDistribution::total_variation(const FiniteDistribution& other) const {
  const auto rhs = aligned(other);
  double sum = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    sum += std::abs(probs_[i] - rhs.probs_[i]);
  }
  return 0.5 * sum;
}

Statistic::Statistic(std::size_t dimension, Function fn, std::optional<double> declared_bound,
                     std::string id)
    : dimension_(dimension), fn_(std::move(fn)), bound_(declared_bound), id_(std::move(id)) {
  if (dimension_ == 0) {
    throw Error(ErrorKind::kInvalidArgument, "statistic dimension must be positive");
  }
}

Statistic Statistic::identity(std::size_t dimension) {
  return Statistic(
      dimension, [](const Point& x) { return Vector(x); }, std::nullopt, "identity");
}

Statistic Statistic::tabulated(StatisticTable table, std::string id) {
  const auto d = static_cast<std::size_t>(table.cols());
  const double bound = table.size() > 0 ? table.cwiseAbs().maxCoeff() : 0.0;
  auto shared = std::make_shared<const StatisticTable>(std::move(table));
  return Statistic(
      d,
      [shared](const Point& x) -> Vector {
        const auto i = static_cast<Eigen::Index>(std::llround(x(0)));
        if (i < 0 || i >= shared->rows()) {
          throw Error(ErrorKind::kInvalidArgument, "atom index outside the statistic table");
        }
        return shared->row(i).transpose();
      },
      bound, std::move(id));
}

Vector Statistic::operator()(const Point& x) const {
  Vector value = fn_(x);
  if (static_cast<std::size_t>(value.size()) != dimension_) {
    throw Error(ErrorKind::kInvalidArgument, "statistic returned a vector of the wrong dimension");
  }
  return value;
}

GaussianModel::GaussianModel(Vector mean, double sd) : mean_(std::move(mean)), sd_(sd) {
  if (mean_.size() == 0 || !(sd_ > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "Gaussian needs a nonempty mean and sd > 0");
  }
}

Point GaussianModel::draw(Rng& rng) const {
  std::normal_distribution<double> normal(0.0, sd_);
  Point x(mean_.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    x(i) = mean_(i) + normal(rng);
  }
  return x;
}

double GaussianModel::log_density(const Point& x) const {
  const double d = static_cast<double>(mean_.size());
  const double sq = (x - mean_).squaredNorm() / (sd_ * sd_);
  return -0.5 * sq - d * (std::log(sd_) + 0.5 * std::log(2.0 * M_PI));
}

std::string GaussianModel::id() const {
  std::ostringstream out;
  out.precision(12);
  out << "gaussian(mean=" << mean_(0) << ",sd=" << sd_ << ",dim=" << mean_.size() << ")";
  return out.str();
}

CategoricalModel::CategoricalModel(FiniteDistribution dist) : dist_(std::move(dist)) {
  cumulative_.resize(dist_.size());
  std::partial_sum(dist_.probs().begin(), dist_.probs().end(), cumulative_.begin());
  cumulative_.back() = 1.0;
}

std::size_t CategoricalModel::draw_index(Rng& rng) const {
  const double u = rng.uniform();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  auto index = static_cast<std::size_t>(it - cumulative_.begin());
  index = std::min(index, cumulative_.size() - 1);
  // Skip zero-mass atoms that upper_bound can land on through equal cumulative values.
  while (dist_[index] == 0.0 && index + 1 < cumulative_.size()) {
    ++index;
  }
  return index;
}

Point CategoricalModel::draw(Rng& rng) const {
  return Point::Constant(1, static_cast<double>(draw_index(rng)));
}

double CategoricalModel::log_density(const Point& x) const {
  const auto i = std::llround(x(0));
  if (i < 0 || static_cast<std::size_t>(i) >= dist_.size()) {
    return kNegInf;
  }
  return std::log(dist_[static_cast<std::size_t>(i)]);
}

WeightedEnsemble::WeightedEnsemble(std::vector<Point> points, std::vector<double> log_weights)
    : points_(std::move(points)), log_weights_(std::move(log_weights)) {
  validate();
}

void WeightedEnsemble::validate() const {
  if (points_.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "ensemble must hold at least one point");
  }
  if (points_.size() != log_weights_.size()) {
    throw Error(ErrorKind::kInvalidArgument, "points and log-weights differ in length");
  }
  const auto d = points_.front().size();
  for (const auto& p : points_) {
    if (p.size() != d || d == 0) {
      throw Error(ErrorKind::kInvalidArgument, "points must share a positive dimension");
    }
  }
}

WeightedEnsemble::WeightedEnsemble(std::vector<Point> points) : points_(std::move(points)) {
  log_weights_.assign(points_.size(), 0.0);
  validate();
}

WeightedEnsemble normalize(const WeightedEnsemble& ensemble) {
  require_normalizable(ensemble.log_weights());
  const double lse = log_sum_exp(ensemble.log_weights());
  std::vector<double> shifted(ensemble.log_weights());
  for (double& v : shifted) {
    v -= lse;
  }
  return WeightedEnsemble(ensemble.points(), std::move(shifted));
}

std::vector<double> normalized_weights(std::span<const double> log_weights) {
  require_normalizable(log_weights);
  const double m = max_finite(log_weights);
  std::vector<double> w(log_weights.size());
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = std::exp(log_weights[i] - m);
    total += w[i];
  }
  for (double& v : w) {
    v /= total;
  }
  return w;
}

std::vector<double> normalized_weights(const WeightedEnsemble& ensemble) {
  return normalized_weights(ensemble.log_weights());
}

Vector empirical_mean(std::span<const double> log_weights, const Matrix& values) {
  if (static_cast<std::size_t>(values.rows()) != log_weights.size()) {
    throw Error(ErrorKind::kInvalidArgument, "one statistic row per point required");
  }
  const auto w = normalized_weights(log_weights);
  // Centering on the first row makes constant statistics come back exactly.
  const Vector origin = values.row(0).transpose();
  Vector acc = Vector::Zero(values.cols());
  for (std::size_t n = 0; n < w.size(); ++n) {
    if (w[n] > 0.0) {
      acc += w[n] * (values.row(static_cast<Eigen::Index>(n)).transpose() - origin);
    }
  }
  return origin + acc;
}

Vector empirical_mean(const WeightedEnsemble& ensemble, const Statistic& stat) {
  Matrix values(static_cast<Eigen::Index>(ensemble.size()), static_cast<Eigen::Index>(stat.dimension()));
  for (std::size_t n = 0; n < ensemble.size(); ++n) {
    values.row(static_cast<Eigen::Index>(n)) = stat(ensemble.points()[n]).transpose();
  }
  return empirical_mean(ensemble.log_weights(), values);
}

double effective_sample_size(std::span<const double> log_weights) {
  require_normalizable(log_weights);
  const double m = max_finite(log_weights);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const double l : log_weights) {
    const double w = std::exp(l - m);
    sum += w;
    sum_sq += w * w;
  }
  const double ess = sum * sum / sum_sq;
  return std::clamp(ess, 1.0, static_cast<double>(log_weights.size()));
}

double effective_sample_size(const WeightedEnsemble& ensemble) {
  return effective_sample_size(ensemble.log_weights());
}

}  // namespace entis
