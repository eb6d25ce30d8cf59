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

#ifndef ENTIS_MOMENT_SET_HPP
#define ENTIS_MOMENT_SET_HPP

#include <cstddef>
#include <utility>

#include "entis/measures.hpp"
#include "entis/rng.hpp"

namespace entis {

/// Closed convex set C ⊂ ℝ^d constraining averages of a statistic.
class ConvexMomentSet {
 public:
  enum class Kind { kSingleton, kBox, kBall, kHalfspaces };

  static ConvexMomentSet singleton(Vector t0);
  static ConvexMomentSet box(Vector lo, Vector hi);
  static ConvexMomentSet ball(Vector center, double radius);
  /// {t : A t ≤ b}, one constraint per row of A.
  static ConvexMomentSet halfspaces(Matrix a, Vector b);

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] std::size_t dimension() const noexcept { return static_cast<std::size_t>(dimension_); }

  [[nodiscard]] bool contains(const Vector& t, double tolerance = 1e-12) const;

  /// Euclidean projection; exact for singleton, box and ball, Dykstra iterations for halfspaces.
  [[nodiscard]] Vector project(const Vector& t) const;

  /// Polyhedral description A t ≤ b (box and halfspaces only; singleton gives both inequalities).
  [[nodiscard]] bool is_polyhedral() const noexcept { return kind_ != Kind::kBall; }
  [[nodiscard]] std::pair<Matrix, Vector> inequalities() const;

  /// Random point of C, used to probe first-order conditions.
  [[nodiscard]] Vector sample(Rng& rng) const;

  [[nodiscard]] const Vector& lo() const noexcept { return lo_; }
  [[nodiscard]] const Vector& hi() const noexcept { return hi_; }
  [[nodiscard]] const Vector& center() const noexcept { return center_; }
  [[nodiscard]] double radius() const noexcept { return radius_; }
  [[nodiscard]] const Matrix& normals() const noexcept { return a_; }
  [[nodiscard]] const Vector& offsets() const noexcept { return b_; }

 private:
  ConvexMomentSet(Kind kind, Eigen::Index dimension) : kind_(kind), dimension_(dimension) {}

  Kind kind_;
  Eigen::Index dimension_;
  Vector lo_, hi_;
  Vector center_;
  double radius_{0.0};
  Matrix a_;
  Vector b_;
  Vector interior_;  // a feasible point of the halfspace system, when one was found
};

}  // namespace entis

#endif
