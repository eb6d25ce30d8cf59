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

#include "oracles.hpp"

#include <cmath>

namespace entis::testing {

double oracle_kl(const std::vector<double>& p, const std::vector<double>& q) {
  long double sum = 0.0L;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) {
      continue;
    }
    if (q[i] == 0.0) {
      return std::numeric_limits<double>::infinity();
    }
    sum += static_cast<long double>(p[i]) * std::log(static_cast<long double>(p[i]) / q[i]);
  }
  return static_cast<double>(sum);
}

double oracle_renyi(const std::vector<double>& p, const std::vector<double>& q, double alpha) {
  long double sum = 0.0L;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) {
      continue;
    }
    if (q[i] == 0.0) {
      return std::numeric_limits<double>::infinity();
    }
    sum += std::pow(static_cast<long double>(p[i]), alpha) * std::pow(static_cast<long double>(q[i]), 1.0L - alpha);
  }
  return static_cast<double>(std::log(sum) / (alpha - 1.0L));
}

double oracle_likelihood_variance(const std::vector<double>& p, const std::vector<double>& q) {
  long double sum = 0.0L;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) {
      sum += static_cast<long double>(p[i]) * p[i] / q[i];
    }
  }
  return static_cast<double>(sum - 1.0L);
}

double oracle_log_partition(const std::vector<double>& pi, const Matrix& table, const Vector& beta) {
  long double z = 0.0L;
  for (std::size_t i = 0; i < pi.size(); ++i) {
    z += pi[i] * std::exp(static_cast<long double>(table.row(static_cast<Eigen::Index>(i)).dot(beta)));
  }
  return static_cast<double>(std::log(z));
}

Vector oracle_tilted_moment(const std::vector<double>& pi, const Matrix& table, const Vector& beta) {
  long double z = 0.0L;
  std::vector<long double> m(static_cast<std::size_t>(table.cols()), 0.0L);
  for (std::size_t i = 0; i < pi.size(); ++i) {
    const auto row = table.row(static_cast<Eigen::Index>(i));
    const long double w = pi[i] * std::exp(static_cast<long double>(row.dot(beta)));
    z += w;
    for (std::size_t j = 0; j < m.size(); ++j) {
      m[j] += w * row(static_cast<Eigen::Index>(j));
    }
  }
  Vector out(table.cols());
  for (std::size_t j = 0; j < m.size(); ++j) {
    out(static_cast<Eigen::Index>(j)) = static_cast<double>(m[j] / z);
  }
  return out;
}

double oracle_two_atom_deviation(std::uint64_t n, double epsilon, double delta) {
  long double total = 0.0L;
  const long double ln_eps = std::log(static_cast<long double>(epsilon));
  const long double ln_rest = std::log1p(-static_cast<long double>(epsilon));
  for (std::uint64_t k = 0; k <= n; ++k) {
    const long double mean = static_cast<long double>(k) / (static_cast<long double>(n) * epsilon);
    if (std::fabs(mean - 1.0L) < delta) {
      continue;
    }
    const long double log_pmf = std::lgamma(static_cast<long double>(n) + 1) - std::lgamma(static_cast<long double>(k) + 1) -
                                std::lgamma(static_cast<long double>(n - k) + 1) + k * ln_eps + (n - k) * ln_rest;
    total += std::exp(log_pmf);
  }
  return static_cast<double>(total);
}

std::pair<double, double> oracle_grid_min(const std::function<double(double)>& f, double lo, double hi, int points) {
  double best_x = lo;
  double best = f(lo);
  for (int i = 1; i < points; ++i) {
    const double x = lo + (hi - lo) * i / (points - 1);
    const double v = f(x);
    if (v < best) {
      best = v;
      best_x = x;
    }
  }
  return {best_x, best};
}

std::vector<double> random_simplex(std::mt19937_64& gen, std::size_t n, bool zeros) {
  std::exponential_distribution<double> exp1(1.0);
  std::bernoulli_distribution drop(0.3);
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) {
    x = exp1(gen);
  }
  if (zeros) {
    std::uniform_int_distribution<std::size_t> keep(0, n - 1);
    const auto kept = keep(gen);
    for (std::size_t i = 0; i < n; ++i) {
      if (i != kept && drop(gen)) {
        w[i] = 0.0;
      }
    }
  }
  for (const double x : w) {
    total += x;
  }
  for (auto& x : w) {
    x /= total;
  }
  return w;
}

Matrix random_table(std::mt19937_64& gen, std::size_t atoms, std::size_t dimension) {
  std::normal_distribution<double> normal;
  Matrix t(static_cast<Eigen::Index>(atoms), static_cast<Eigen::Index>(dimension));
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    for (Eigen::Index j = 0; j < t.cols(); ++j) {
      t(i, j) = normal(gen);
    }
  }
  return t;
}

}  // namespace entis::testing
