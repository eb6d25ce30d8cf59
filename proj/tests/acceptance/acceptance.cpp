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

// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "entis/adaptive.hpp"
#include "entis/bounds.hpp"
#include "entis/entropy.hpp"
#include "entis/gibbs.hpp"
#include "entis/smc.hpp"
#include "entis/wlc.hpp"
#include "oracles.hpp"

namespace {

using namespace entis;
using entis::testing::oracle_kl;
using entis::testing::oracle_log_partition;
using entis::testing::oracle_tilted_moment;
using entis::testing::random_simplex;
using entis::testing::random_table;

struct Outcome {
  bool pass{true};
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

void fail(Outcome& o, const std::string& why) {
  o.pass = false;
  o.detail += (o.detail.empty() ? "" : "; ") + why;
}

Vector random_moment(std::mt19937_64& gen, const Matrix& t) {
  const auto w = random_simplex(gen, static_cast<std::size_t>(t.rows()));
  Vector m = Vector::Zero(t.cols());
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    m += w[static_cast<std::size_t>(i)] * t.row(i).transpose();
  }
  return m;
}

Outcome two_atom_regimes() {
  Outcome o;
  const FiniteDistribution pi({0.7, 0.3});
  double worst = 0.0;
  for (const double h : {0.1, 0.7, 1.5}) {
    const auto grid = wlc_argmin_grid(WlcProblem{pi, std::nullopt, h});
    const double tv = grid.proposal.total_variation(two_atom_argmin(pi, h).proposal);
    worst = std::max(worst, tv);
    if (tv > 1e-3) {
      fail(o, fmt("h=%.1f grid argmin mu(1)=%.6f vs closed form, TV %.4f", h, grid.proposal[1], tv));
    }
  }
  const auto dir = std::filesystem::temp_directory_path() / "entis_acceptance_wlc";
  std::filesystem::remove_all(dir);
  std::ofstream(std::filesystem::temp_directory_path() / "entis_acceptance_wlc.yaml")
      << "seed: 1\npi: [0.7, 0.3]\nh_min: 0.0\nh_max: 2.0\nh_steps: 201\n";
  const int code = cli::run({"wlc-sweep", "--config",
                             (std::filesystem::temp_directory_path() / "entis_acceptance_wlc.yaml").string(), "--out",
                             dir.string()});
  if (code != 0) {
    fail(o, "wlc-sweep exited with " + std::to_string(code));
    return o;
  }
  std::ifstream csv(dir / "wlc_sweep.csv");
  std::string line;
  std::getline(csv, line);
  std::vector<double> switches;
  std::string last;
  while (std::getline(csv, line)) {
    std::stringstream row(line);
    std::string h, regime;
    std::getline(row, h, ',');
    std::getline(row, regime, ',');
    if (!last.empty() && regime != last) {
      switches.push_back(std::stod(h));
    }
    last = regime;
  }
  const double step = 0.01;
  if (switches.size() != 2 || std::fabs(switches[0] + std::log(0.7)) > step ||
      std::fabs(switches[1] + std::log(0.3)) > step) {
    fail(o, "regime switches not at -ln 0.7 and -ln 0.3");
  } else {
    o.detail += (o.detail.empty() ? "" : "; ") + fmt("switches at h=%.2f, %.2f", switches[0], switches[1]);
  }
  if (o.pass) {
    o.detail = fmt("max TV %.2e; ", worst) + o.detail;
  }
  return o;
}

Outcome pythagorean() {
  Outcome o;
  std::mt19937_64 gen(2024);
  std::uniform_int_distribution<int> atoms(2, 10), dims(1, 3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double min_box = 1e300, max_lin = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto n = static_cast<std::size_t>(atoms(gen));
    const auto d = static_cast<std::size_t>(std::min<int>(dims(gen), static_cast<int>(n) - 1));
    const auto pi = random_simplex(gen, n);
    const Matrix t = random_table(gen, n, d);
    const auto eta = random_simplex(gen, n, true);
    Vector et = Vector::Zero(static_cast<Eigen::Index>(d));
    for (std::size_t a = 0; a < n; ++a) {
      et += eta[a] * t.row(static_cast<Eigen::Index>(a)).transpose();
    }
    Vector lo(et.size()), hi(et.size());
    for (Eigen::Index j = 0; j < et.size(); ++j) {
      lo(j) = et(j) - 0.3 * unit(gen);
      hi(j) = et(j) + 0.3 * unit(gen);
    }
    const auto box = solve_convex_constraint(FiniteDistribution(pi), t, ConvexMomentSet::box(lo, hi));
    min_box = std::min(min_box, pythagorean_check(FiniteDistribution(eta), box, FiniteDistribution(pi)));
    // Equality case: full-support η keeps its moment interior.
    const auto eta_full = random_simplex(gen, n);
    Vector t0 = Vector::Zero(static_cast<Eigen::Index>(d));
    for (std::size_t a = 0; a < n; ++a) {
      t0 += eta_full[a] * t.row(static_cast<Eigen::Index>(a)).transpose();
    }
    const auto lin = solve_linear_family(FiniteDistribution(pi), t, t0);
    max_lin = std::max(max_lin, std::fabs(pythagorean_check(FiniteDistribution(eta_full), lin, FiniteDistribution(pi))));
  }
  if (min_box < -1e-10) {
    fail(o, fmt("box residual %.3e", min_box));
  }
  if (max_lin > 1e-10) {
    fail(o, fmt("linear-family |residual| %.3e", max_lin));
  }
  o.detail += (o.detail.empty() ? "" : "; ") + fmt("min box residual %.2e, max linear |residual| %.2e", min_box, max_lin);
  return o;
}

Outcome gibbs_solver() {
  Outcome o;
  std::mt19937_64 gen(77);
  std::uniform_int_distribution<int> atoms(3, 10), dims(1, 3);
  std::normal_distribution<double> normal;
  double moment_err = 0.0, grad_err = 0.0, hess_err = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto n = static_cast<std::size_t>(atoms(gen));
    const auto d = static_cast<std::size_t>(std::min<int>(dims(gen), static_cast<int>(n) - 1));
    const auto pi = random_simplex(gen, n);
    const Matrix t = random_table(gen, n, d);
    const Vector t0 = random_moment(gen, t);
    const auto model = solve_linear_family(FiniteDistribution(pi), t, t0);
    moment_err = std::max(moment_err, (oracle_tilted_moment(pi, t, model.beta) - t0).cwiseAbs().maxCoeff());

    const GibbsFamily fam(FiniteDistribution(pi), t);
    Vector beta(static_cast<Eigen::Index>(d));
    for (auto& b : beta) {
      b = normal(gen);
    }
    const double step = 1e-5;
    const Vector g = fam.moment(beta);
    const Matrix hess = fam.covariance(beta);
    for (Eigen::Index j = 0; j < beta.size(); ++j) {
      Vector e = Vector::Zero(beta.size());
      e(j) = step;
      grad_err = std::max(grad_err, std::fabs(g(j) - (oracle_log_partition(pi, t, beta + e) -
                                                      oracle_log_partition(pi, t, beta - e)) / (2 * step)));
      const Vector col = (oracle_tilted_moment(pi, t, beta + e) - oracle_tilted_moment(pi, t, beta - e)) / (2 * step);
      hess_err = std::max(hess_err, (hess.col(j) - col).cwiseAbs().maxCoeff());
    }
  }
  if (moment_err > 1e-10) {
    fail(o, fmt("moment error %.3e", moment_err));
  }
  if (grad_err > 1e-6) {
    fail(o, fmt("gradient error %.3e", grad_err));
  }
  if (hess_err > 1e-5) {
    fail(o, fmt("Hessian error %.3e", hess_err));
  }
  o.detail += (o.detail.empty() ? "" : "; ") +
              fmt("max moment error %.2e, gradient FD %.2e, Hessian FD %.2e", moment_err, grad_err, hess_err);
  return o;
}

Outcome smc_normalizer() {
  Outcome o;
  const GaussianModel pi(0.0, 1.0);
  const auto stat = Statistic::identity(1);
  SmcConfig cfg;
  cfg.particle_count = 10000;
  cfg.temperature_ladder = uniform_ladder(20);
  cfg.move_kernel = std::make_shared<RandomWalkKernel>(1.0);
  cfg.replicas = 50;
  const Rng root(4);
  for (const double beta : {0.5, 1.0, 2.0}) {
    Rng rng = root.split(static_cast<std::uint64_t>(beta * 1000));
    const auto res = run_smc(pi, stat, Vector::Constant(1, beta), cfg, rng);
    const double z = (res.log_z_estimate - beta * beta / 2) / *res.log_z_std_error;
    if (std::fabs(z) > 3.0) {
      fail(o, fmt("beta=%.1f off by %.2f s.e.", beta, z));
    }
    o.detail += fmt("beta=%.1f: %.5f (exact %.3f)", beta, res.log_z_estimate, beta * beta / 2) + "; ";
  }
  return o;
}

Outcome strip_construction() {
  Outcome o;
  const std::vector<std::pair<std::string, SquareFunction>> fs{
      {"y", [](double, double y) { return y; }},
      {"constant", [](double, double) { return 1.0; }},
      {"sin(6x)y+xy^2", [](double x, double y) { return std::sin(6 * x) * y + x * y * y; }},
  };
  double ent_err = 0.0, push_err = 0.0, gain = 1e300, min_slack = 1e300;
  for (const auto& [name, f] : fs) {
    for (const double h : {std::log(2.0), 0.5, 1.0, 2.0}) {
      const auto s = build_strip_target(f, h, 1024);
      ent_err = std::max(ent_err, std::fabs(s.achieved_entropy - h));
      push_err = std::max(push_err, s.max_pushforward_error);
      gain = std::min(gain, s.eta_f - s.pi_f);
      if (s.eta_f < s.pi_f - 1e-12) {
        fail(o, name + ": eta(f) < pi(f)");
      }
    }
  }
  const std::vector<SquareFunction> mus{
      [](double, double) { return 1.0; },
      [](double, double y) { return 1.0 + 0.9 * std::cos(2 * std::numbers::pi * y); },
      [](double, double y) { return std::exp(3.0 * y); },
  };
  for (const auto& mu : mus) {
    for (const double h : {0.5, 1.0, 2.0}) {
      min_slack = std::min(min_slack, strip_lower_bound_check(mu, h, 1024).slack);
    }
  }
  if (ent_err > 1e-6) {
    fail(o, fmt("entropy error %.3e", ent_err));
  }
  if (push_err > 1e-9) {
    fail(o, fmt("push-forward error %.3e", push_err));
  }
  if (min_slack < -1e-4) {
    fail(o, fmt("lower-bound slack %.3e", min_slack));
  }
  o.detail += (o.detail.empty() ? "" : "; ") + fmt("entropy error %.1e, push-forward error %.1e, ", ent_err, push_err) +
              fmt("min eta(f)-pi(f) %.2e, min slack %.2e", gain, min_slack);
  return o;
}

Outcome sample_size_bracket() {
  Outcome o;
  struct Case {
    std::string name;
    DiscreteY y;
    double delta, p_alpha;
  };
  const std::vector<Case> cases{{"three-point", DiscreteY::three_point(ThreePointParams{}), 0.3, 0.3},
                                {"two-atom", DiscreteY::two_atom(1e-3), 0.5, 0.5}};
  const Rng root(6);
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& c = cases[i];
    DeviationProbeConfig cfg;
    cfg.delta = c.delta;
    cfg.p_alpha = c.p_alpha;
    cfg.replications = 10000;
    Rng rng = root.split(i);
    const auto res = empirical_critical_n(c.y, cfg, rng);
    const auto [eta, mu] = c.y.distributions();
    const auto b = bound_report(eta, mu, c_constant(c.delta, c.p_alpha), BoundVariant::kSingleGap);
    const double ln_n = std::log(res.n_star);
    if (ln_n < b.ln_nstar_interval.first || ln_n > b.ln_nstar_interval.second) {
      fail(o, c.name + " outside bracket");
    }
    o.detail += c.name + fmt(": ln N*=%.3f in [%.3f, %.3f]", ln_n, b.ln_nstar_interval.first, b.ln_nstar_interval.second) +
                "; ";
  }
  return o;
}

Outcome dominance() {
  Outcome o;
  const auto sweep = dominance_sweep(4, 12);
  for (std::size_t i = 1; i < sweep.size(); ++i) {
    if (!(sweep[i].dominance_ratio > sweep[i - 1].dominance_ratio)) {
      fail(o, "dominance ratio not strictly increasing at k=" + std::to_string(4 + i));
    }
  }
  const double last = sweep.back().dominance_ratio;
  if (!(last > 5.0)) {
    fail(o, fmt("final dominance ratio %.4f is not > 5", last));
  }
  o.detail += (o.detail.empty() ? "" : "; ") + fmt("ratios %.4f .. %.4f", sweep.front().dominance_ratio, last);
  return o;
}

Outcome cross_entropy() {
  Outcome o;
  std::mt19937_64 gen(88);
  double max_diff = 0.0;
  for (int inst = 0; inst < 20; ++inst) {
    const auto pi = random_simplex(gen, 10);
    const Matrix t = random_table(gen, 10, 1 + inst % 2);
    const auto fam = std::make_shared<const GibbsFamily>(FiniteDistribution(pi), t);
    const auto target = random_simplex(gen, 10);
    std::vector<double> log_target(10);
    for (std::size_t i = 0; i < 10; ++i) {
      log_target[i] = std::log(target[i] / pi[i]);
    }
    CrossEntropyOptions opt;
    opt.samples = 10000;
    Rng rng(static_cast<std::uint64_t>(inst));
    const auto state = ce_step(fam, initial_state(*fam, Vector::Zero(t.cols())), log_target, opt, rng);
    const auto worst = solve_convex_constraint(fam, ConvexMomentSet::singleton(state.moment));
    max_diff = std::max(max_diff, (state.beta - worst.beta).cwiseAbs().maxCoeff());
  }
  if (max_diff > 1e-10) {
    fail(o, fmt("CE step vs constrained solve differ by %.3e", max_diff));
  }
  Matrix t(10, 1);
  for (int i = 0; i < 10; ++i) {
    t(i, 0) = i / 9.0;
  }
  const auto fam = std::make_shared<const GibbsFamily>(FiniteDistribution::uniform(10), t);
  std::vector<double> log_target(10);
  for (std::size_t i = 0; i < 10; ++i) {
    log_target[i] = 2.0 * t(static_cast<Eigen::Index>(i), 0);
  }
  CrossEntropyConfig cfg;
  cfg.max_iterations = 5;
  Rng rng(9);
  const auto run = run_cross_entropy(fam, log_target, Vector::Zero(1), cfg, rng);
  const auto& last = run.trajectory.back();
  const double z = (last.beta(0) - 2.0) / last.beta_std_error(0);
  if (std::fabs(z) > 3.0 || last.iteration > 5) {
    fail(o, fmt("in-family beta %.4f is %.2f s.e. from 2", last.beta(0), z));
  }
  o.detail += (o.detail.empty() ? "" : "; ") +
              fmt("max |beta_CE - beta_C| %.2e; recovered beta %.4f +- %.4f", max_diff, last.beta(0),
                  last.beta_std_error(0)) +
              " after " + std::to_string(last.iteration) + " iterations";
  return o;
}

Outcome renyi_properties() {
  Outcome o;
  std::mt19937_64 gen(99);
  std::uniform_int_distribution<int> atoms(2, 10);
  const std::vector<double> orders{0.0, 0.05, 0.25, 0.5, 0.75, 0.99, 1.0, 1.01, 1.5, 2.0, 3.0, 5.0, 10.0, kInf};
  double worst_mono = 0.0, worst_var = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto n = static_cast<std::size_t>(atoms(gen));
    const auto p = random_simplex(gen, n, true);
    const auto q = random_simplex(gen, n);
    const FiniteDistribution eta(p), mu(q);
    double prev = -kInf;
    for (const double a : orders) {
      const double v = renyi_entropy_finite(eta, mu, a);
      worst_mono = std::max(worst_mono, prev - v);
      prev = v;
    }
    long double var = 0.0L;
    for (std::size_t k = 0; k < n; ++k) {
      const long double y = static_cast<long double>(p[k]) / q[k];
      var += q[k] * (y - 1) * (y - 1);
    }
    const double got = variance_from_renyi2(renyi_entropy_finite(eta, mu, 2.0));
    worst_var = std::max(worst_var, std::fabs(got - static_cast<double>(var)) / std::max(1.0, static_cast<double>(var)));
  }
  if (worst_mono > 1e-10) {
    fail(o, fmt("monotonicity violated by %.3e", worst_mono));
  }
  if (worst_var > 1e-10) {
    fail(o, fmt("variance identity error %.3e", worst_var));
  }
  o.detail += (o.detail.empty() ? "" : "; ") +
              fmt("max order violation %.2e, max variance identity error %.2e (relative to max(1,Var))", worst_mono,
                  worst_var);
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "two-atom WLC argmin regimes", 10.0, two_atom_regimes},
      {2, "Pythagorean inequality and equality", 30.0, pythagorean},
      {3, "Gibbs solver accuracy and derivatives", 60.0, gibbs_solver},
      {4, "SMC normalizing constant", 120.0, smc_normalizer},
      {5, "strip target construction and lower-bound slack", 120.0, strip_construction},
      {6, "sample-size bracket", 300.0, sample_size_bracket},
      {7, "entropy-vs-variance dominance sweep", 1.0, dominance},
      {8, "cross-entropy equivalence and recovery", 30.0, cross_entropy},
      {9, "Renyi monotonicity and variance identity", 10.0, renyi_properties},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_seconds) {
      o.pass = false;
      o.detail += fmt("; runtime %.1fs exceeds %.0fs", secs, c.budget_seconds);
    }
    while (o.detail.size() >= 2 && o.detail.compare(o.detail.size() - 2, 2, "; ") == 0) {
      o.detail.resize(o.detail.size() - 2);
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s %d %s (%.2fs): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
