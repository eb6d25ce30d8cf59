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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "entis/errors.hpp"
#include "entis/wlc.hpp"

namespace entis {

namespace {

constexpr double kClip = 50.0;
constexpr double kResolvable = 0.1;

}  // namespace

StripTarget build_strip_target(const SquareFunction& f, double h, int resolution) {
  if (resolution < 2) {
    throw Error(ErrorKind::kInvalidArgument, "strip quadrature needs at least 2 cells per side");
  }
  if (!(h >= 0.0) || !std::isfinite(h)) {
    throw Error(ErrorKind::kDomainError, "h must be finite and at least h_star = 0");
  }
  const int n = resolution;
  const auto un = static_cast<std::size_t>(n);
  const double cell = 1.0 / n;

  std::vector<double> mid(un * un);
  double lo = kInf;
  double hi = kNegInf;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double v = f((i + 0.5) * cell, (j + 0.5) * cell);
      if (!std::isfinite(v)) {
        throw Error(ErrorKind::kDomainError, "f must be finite on the unit square");
      }
      mid[static_cast<std::size_t>(i) * un + static_cast<std::size_t>(j)] = v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  // Each cell must look constant relative to the range of f, or the slice order is meaningless.
  if (hi > lo) {
    std::vector<double> corners((un + 1) * (un + 1));
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) {
        corners[static_cast<std::size_t>(i) * (un + 1) + static_cast<std::size_t>(j)] = f(i * cell, j * cell);
      }
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < un; ++i) {
      for (std::size_t j = 0; j < un; ++j) {
        const double m = mid[i * un + j];
        for (const std::size_t c : {i * (un + 1) + j, i * (un + 1) + j + 1, (i + 1) * (un + 1) + j,
                                    (i + 1) * (un + 1) + j + 1}) {
          worst = std::max(worst, std::abs(corners[c] - m));
        }
      }
    }
    if (!(worst <= kResolvable * (hi - lo))) {
      throw Error(ErrorKind::kQuadratureFailure, "f varies below the quadrature cell scale");
    }
  }

  StripTarget target;
  target.h = h;
  target.h_star = 0.0;
  target.slice_fraction = std::exp(-h);
  target.resolution = n;
  target.cell_mass.assign(un * un, 0.0);
  target.threshold.assign(un, 0.0);

  const double keep = target.slice_fraction * n;
  const auto full = static_cast<std::size_t>(std::min(std::floor(keep), static_cast<double>(n)));
  const double partial = full < un ? keep - static_cast<double>(full) : 0.0;
  const double density = std::exp(h);
  const double cell_area = cell * cell;

  std::vector<std::size_t> order(un);
  // Extended accumulators: a million-cell sum in double drifts by ~1e-12.
  long double entropy = 0.0L;
  for (std::size_t i = 0; i < un; ++i) {
    const double* column = &mid[i * un];
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Descending by f, ties broken by the larger y.
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return column[a] != column[b] ? column[a] > column[b] : a > b;
    });
    long double slice_mass = 0.0L;
    for (std::size_t k = 0; k < full; ++k) {
      const double mass = density * cell_area;
      target.cell_mass[i * un + order[k]] = mass;
      entropy += mass * std::log(mass / cell_area);
      slice_mass += mass;
    }
    if (partial > 0.0) {
      const double mass = density * partial * cell_area;
      target.cell_mass[i * un + order[full]] = mass;
      entropy += mass * std::log(mass / (partial * cell_area));
      slice_mass += mass;
    }
    const std::size_t last = partial > 0.0 ? full : full - 1;
    target.threshold[i] = column[order[last]];
    target.max_pushforward_error =
        std::max(target.max_pushforward_error, static_cast<double>(std::abs(slice_mass - cell)));
  }
  target.achieved_entropy = static_cast<double>(entropy);
  long double eta_f = 0.0L;
  long double pi_f = 0.0L;
  for (std::size_t c = 0; c < mid.size(); ++c) {
    eta_f += static_cast<long double>(target.cell_mass[c]) * mid[c];
    pi_f += static_cast<long double>(mid[c]) * cell_area;
  }
  target.eta_f = static_cast<double>(eta_f);
  target.pi_f = static_cast<double>(pi_f);
  return target;
}

StripLowerBoundCheck strip_lower_bound_check(const SquareFunction& mu_density, double h, int resolution) {
  const int n = resolution;
  const auto un = static_cast<std::size_t>(n);
  const double cell = 1.0 / n;
  const double cell_area = cell * cell;

  double z = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double v = mu_density((i + 0.5) * cell, (j + 0.5) * cell);
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw Error(ErrorKind::kDomainError, "mu density must be positive and finite");
      }
      z += v * cell_area;
    }
  }
  const double log_z = std::log(z);
  // g = ln(dπ/dμ) for the normalized μ.
  const auto g = [&](double x, double y) { return log_z - std::log(mu_density(x, y)); };
  const auto strip = build_strip_target([&](double x, double y) { return std::clamp(g(x, y), -kClip, kClip); }, h,
                                        resolution);

  StripLowerBoundCheck check;
  double eta_g = 0.0;
  for (std::size_t i = 0; i < un; ++i) {
    for (std::size_t j = 0; j < un; ++j) {
      const double x = (static_cast<double>(i) + 0.5) * cell;
      const double y = (static_cast<double>(j) + 0.5) * cell;
      const double gv = g(x, y);
      eta_g += strip.cell_mass[i * un + j] * gv;
      check.ent_pi_mu += gv * cell_area;
      check.ent_mu_pi -= std::exp(-gv) * gv * cell_area;
    }
  }
  // Ent(η|μ) = Ent(η|π) + η(ln π/μ).
  check.ent_eta_mu = h + eta_g;
  check.slack = eta_g - check.ent_pi_mu;
  check.slack_reverse = eta_g - check.ent_mu_pi;
  return check;
}

}  // namespace entis
