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

#include "entis/moment_set.hpp"

#include <cmath>
#include <random>

#include "entis/errors.hpp"

namespace entis {

namespace {

constexpr int kDykstraMaxSweeps = 20000;
constexpr double kDykstraTolerance = 1e-14;

Vector dykstra(const Matrix& a, const Vector& b, const Vector& start) {
  const Eigen::Index m = a.rows();
  Vector x = start;
  Matrix corrections = Matrix::Zero(a.cols(), m);
  for (int sweep = 0; sweep < kDykstraMaxSweeps; ++sweep) {
    const Vector previous = x;
    for (Eigen::Index k = 0; k < m; ++k) {
      const Vector y = x + corrections.col(k);
      const double norm_sq = a.row(k).squaredNorm();
      const double excess = a.row(k).dot(y) - b(k);
      Vector projected = y;
      if (excess > 0.0) {
        projected -= (excess / norm_sq) * a.row(k).transpose();
      }
      corrections.col(k) = y - projected;
      x = projected;
    }
    if ((x - previous).lpNorm<Eigen::Infinity>() <= kDykstraTolerance * (1.0 + x.lpNorm<Eigen::Infinity>())) {
      break;
    }
  }
  return x;
}

}  // namespace

ConvexMomentSet ConvexMomentSet::singleton(Vector t0) {
  if (t0.size() == 0) {
    throw Error(ErrorKind::kInvalidArgument, "singleton needs a point");
  }
  ConvexMomentSet set(Kind::kSingleton, t0.size());
  set.lo_ = t0;
  set.hi_ = t0;
  set.center_ = std::move(t0);
  return set;
}

ConvexMomentSet ConvexMomentSet::box(Vector lo, Vector hi) {
  if (lo.size() == 0 || lo.size() != hi.size() || (lo.array() > hi.array()).any()) {
    throw Error(ErrorKind::kInvalidArgument, "box needs lo <= hi of equal dimension");
  }
  ConvexMomentSet set(Kind::kBox, lo.size());
  set.center_ = 0.5 * (lo + hi);
  set.lo_ = std::move(lo);
  set.hi_ = std::move(hi);
  return set;
}

ConvexMomentSet ConvexMomentSet::ball(Vector center, double radius) {
  if (center.size() == 0 || !(radius >= 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "ball needs a center and radius >= 0");
  }
  ConvexMomentSet set(Kind::kBall, center.size());
  set.lo_ = center.array() - radius;
  set.hi_ = center.array() + radius;
  set.center_ = std::move(center);
  set.radius_ = radius;
  return set;
}

ConvexMomentSet ConvexMomentSet::halfspaces(Matrix a, Vector b) {
  if (a.rows() == 0 || a.cols() == 0 || a.rows() != b.size()) {
    throw Error(ErrorKind::kInvalidArgument, "halfspaces need one offset per normal row");
  }
  for (Eigen::Index k = 0; k < a.rows(); ++k) {
    if (a.row(k).squaredNorm() == 0.0) {
      throw Error(ErrorKind::kInvalidArgument, "halfspace normal must be nonzero");
    }
  }
  ConvexMomentSet set(Kind::kHalfspaces, a.cols());
  set.a_ = std::move(a);
  set.b_ = std::move(b);
  set.interior_ = dykstra(set.a_, set.b_, Vector::Zero(set.dimension_));
  if (!set.contains(set.interior_, 1e-9)) {
    throw Error(ErrorKind::kInvalidArgument, "halfspace system appears to be empty");
  }
  set.center_ = set.interior_;
  return set;
}

bool ConvexMomentSet::contains(const Vector& t, double tolerance) const {
  if (t.size() != dimension_) {
    throw Error(ErrorKind::kInvalidArgument, "moment dimension mismatch");
  }
  switch (kind_) {
    case Kind::kSingleton:
    case Kind::kBox:
      return (t.array() >= lo_.array() - tolerance).all() && (t.array() <= hi_.array() + tolerance).all();
    case Kind::kBall:
      return (t - center_).norm() <= radius_ + tolerance;
    case Kind::kHalfspaces:
      return ((a_ * t - b_).array() <= tolerance).all();
  }
  return false;
}

Vector ConvexMomentSet::project(const Vector& t) const {
  if (t.size() != dimension_) {
    throw Error(ErrorKind::kInvalidArgument, "moment dimension mismatch");
  }
  switch (kind_) {
    case Kind::kSingleton:
      return center_;
    case Kind::kBox:
      return t.cwiseMax(lo_).cwiseMin(hi_);
    case Kind::kBall: {
      const Vector offset = t - center_;
      const double norm = offset.norm();
      if (norm <= radius_) {
        return t;
      }
      return center_ + (radius_ / norm) * offset;
    }
    case Kind::kHalfspaces:
      if (contains(t, 0.0)) {
        return t;
      }
      return dykstra(a_, b_, t);
  }
  return t;
}

std::pair<Matrix, Vector> ConvexMomentSet::inequalities() const {
  switch (kind_) {
    case Kind::kSingleton:
    case Kind::kBox: {
      const Eigen::Index d = dimension_;
      Matrix a(2 * d, d);
      Vector b(2 * d);
      a.topRows(d) = Matrix::Identity(d, d);
      a.bottomRows(d) = -Matrix::Identity(d, d);
      b.head(d) = hi_;
      b.tail(d) = -lo_;
      return {a, b};
    }
    case Kind::kHalfspaces:
      return {a_, b_};
    case Kind::kBall:
      break;
  }
  throw Error(ErrorKind::kInvalidArgument, "a ball has no finite polyhedral description");
}

Vector ConvexMomentSet::sample(Rng& rng) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  switch (kind_) {
    case Kind::kSingleton:
      return center_;
    case Kind::kBox: {
      Vector t(dimension_);
      for (Eigen::Index j = 0; j < dimension_; ++j) {
        t(j) = lo_(j) + unit(rng) * (hi_(j) - lo_(j));
      }
      return t;
    }
    case Kind::kBall: {
      Vector direction(dimension_);
      for (Eigen::Index j = 0; j < dimension_; ++j) {
        direction(j) = normal(rng);
      }
      const double scale = radius_ * std::pow(unit(rng), 1.0 / static_cast<double>(dimension_));
      return center_ + scale * direction.normalized();
    }
    case Kind::kHalfspaces: {
      // Projected Gaussian cloud around a feasible point; covers faces as well as the interior.
      Vector t(dimension_);
      for (Eigen::Index j = 0; j < dimension_; ++j) {
        t(j) = interior_(j) + 2.0 * normal(rng);
      }
      return project(t);
    }
  }
  return center_;
}

}  // namespace entis
