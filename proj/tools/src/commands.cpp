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

#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>

#include "CLI11.hpp"
#include "entis/adaptive.hpp"
#include "entis/bounds.hpp"
#include "entis/csv.hpp"
#include "entis/entropy.hpp"
#include "entis/errors.hpp"
#include "entis/gibbs.hpp"
#include "entis/serialization.hpp"
#include "entis/smc.hpp"
#include "entis/wlc.hpp"
#include "json.hpp"

namespace entis::cli {

namespace {

using nlohmann::ordered_json;

std::ofstream open_output(const RunContext& ctx, const std::string& name) {
  std::filesystem::create_directories(ctx.out);
  std::ofstream out(ctx.out / name);
  if (!out) {
    throw std::filesystem::filesystem_error("cannot write output file", ctx.out / name,
                                            std::make_error_code(std::errc::permission_denied));
  }
  return out;
}

void write_json(const RunContext& ctx, const std::string& name, const ordered_json& j) {
  open_output(ctx, name) << j.dump(2) << '\n';
}

void write_json(const RunContext& ctx, const std::string& name, const std::string& text) {
  open_output(ctx, name) << text << '\n';
}

ordered_json embed(const std::string& text) { return ordered_json::parse(text); }

ordered_json number(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json vector_json(const Vector& v) {
  auto out = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back(number(v(i)));
  }
  return out;
}

Vector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

FiniteDistribution read_distribution(Config& cfg, const std::string& key) {
  auto probs = cfg.numbers(key);
  auto atoms = cfg.strings("atoms");
  try {
    if (atoms.empty()) {
      return FiniteDistribution::from_weights(std::move(probs));
    }
    return FiniteDistribution::from_weights(std::move(atoms), std::move(probs));
  } catch (const Error& e) {
    cfg.fail(key, e.what());
  }
}

StatisticTable read_statistic(Config& cfg, std::size_t atoms) {
  const Matrix table = cfg.matrix("statistic");
  if (static_cast<std::size_t>(table.rows()) != atoms) {
    cfg.fail("statistic", "needs one row per atom (" + std::to_string(atoms) + ")");
  }
  return table;
}

Vector read_vector(Config& cfg, const std::string& key, Eigen::Index dimension) {
  const auto v = cfg.numbers(key);
  if (static_cast<Eigen::Index>(v.size()) != dimension) {
    cfg.fail(key, "expected " + std::to_string(dimension) + " entries");
  }
  return to_vector(v);
}

Vector read_vector(Config& cfg, const std::string& key, Eigen::Index dimension, const Vector& fallback) {
  return cfg.has(key) ? read_vector(cfg, key, dimension) : (static_cast<void>(cfg.numbers(key, {})), fallback);
}

template <typename Enum>
Enum choice(Config& cfg, const std::string& key, const std::string& fallback,
            const std::map<std::string, Enum>& options) {
  const auto value = cfg.text(key, fallback);
  const auto it = options.find(value);
  if (it == options.end()) {
    std::string allowed;
    for (const auto& [name, _] : options) {
      allowed += (allowed.empty() ? "" : ", ") + name;
    }
    cfg.fail(key, "must be one of: " + allowed);
  }
  return it->second;
}

std::size_t positive_count(Config& cfg, const std::string& key, std::int64_t fallback) {
  const auto v = cfg.integer(key, fallback);
  if (v < 1) {
    cfg.fail(key, "must be a positive integer");
  }
  return static_cast<std::size_t>(v);
}

std::vector<std::string> indexed(const std::string& prefix, Eigen::Index n) {
  std::vector<std::string> out;
  for (Eigen::Index i = 0; i < n; ++i) {
    out.push_back(prefix + std::to_string(i));
  }
  return out;
}

}  // namespace

void cmd_entropy(Config& cfg, const RunContext& ctx) {
  enum class Pair { kFinite, kGaussian };
  const auto pair = choice<Pair>(cfg, "pair", "finite", {{"finite", Pair::kFinite}, {"gaussian", Pair::kGaussian}});
  const auto orders = cfg.numbers("orders", default_renyi_orders());
  EntropyReport report;
  if (pair == Pair::kFinite) {
    const auto eta = read_distribution(cfg, "eta");
    auto mu = read_distribution(cfg, "mu");
    if (!eta.same_atoms(mu)) {
      cfg.fail("mu", "must have the same atoms as eta");
    }
    cfg.reject_unused();
    report = entropy_report_finite(eta, mu, orders);
  } else {
    const GaussianModel eta(cfg.number("eta_mean"), cfg.number("eta_sd"));
    const GaussianModel mu(cfg.number("mu_mean"), cfg.number("mu_sd"));
    const auto samples = positive_count(cfg, "samples", 100000);
    cfg.reject_unused();
    Rng rng = Rng(ctx.seed).split("entropy");
    std::vector<Point> draws;
    draws.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
      draws.push_back(eta.draw(rng));
    }
    report = entropy_report_mc([&](const Point& x) { return eta.log_density(x); },
                               [&](const Point& x) { return mu.log_density(x); }, WeightedEnsemble(std::move(draws)),
                               orders);
  }
  write_json(ctx, "entropy_report.json", json::to_json(report));
  auto out = open_output(ctx, "renyi_profile.csv");
  csv::Writer writer(out, {"alpha", "value"});
  for (const auto& [order, value] : report.renyi) {
    writer.row({order, value});
  }
}

void cmd_bound_sweep(Config& cfg, const RunContext& ctx) {
  const bool sweep = choice<bool>(cfg, "mode", "sweep", {{"sweep", true}, {"grid", false}});
  const double delta = cfg.number("delta", 0.5);
  const double p_alpha = cfg.number("p_alpha", 0.5);
  const auto variant = choice<BoundVariant>(cfg, "variant", "single_gap",
                                            {{"single_gap", BoundVariant::kSingleGap},
                                             {"double_gap", BoundVariant::kDoubleGap}});
  std::vector<ThreePointParams> rows;
  if (sweep) {
    const auto k_min = cfg.integer("k_min", 4);
    const auto k_max = cfg.integer("k_max", 12);
    if (k_min > k_max) {
      cfg.fail("k_max", "must be at least k_min");
    }
    for (auto k = k_min; k <= k_max; ++k) {
      rows.push_back(dominance_params(static_cast<int>(k)));
    }
  } else {
    for (const double l1 : cfg.numbers("l1")) {
      for (const double r : cfg.numbers("r")) {
        for (const double alpha : cfg.numbers("alpha")) {
          rows.push_back({l1, r, alpha});
        }
      }
    }
  }
  cfg.reject_unused();
  const double c = c_constant(delta, p_alpha);

  auto out = open_output(ctx, "bound_sweep.csv");
  csv::Writer writer(out, {"l1", "r", "alpha", "ent", "ln_var", "gap", "theta_star", "slack_r", "dominance_ratio"});
  ordered_json summary;
  summary["c_constant"] = c;
  summary["variant"] = to_string(variant);
  auto reports = ordered_json::array();
  bool increasing = true;
  std::optional<double> previous;
  for (const auto& p : rows) {
    const auto r = three_point_report(p, c, variant);
    writer.row({p.l1, p.r, p.alpha, r.ent, r.ln_var, r.gap, r.theta_star, r.slack_r, r.dominance_ratio});
    reports.push_back(embed(json::to_json(r)));
    increasing = increasing && (!previous || r.dominance_ratio > *previous);
    previous = r.dominance_ratio;
  }
  summary["rows"] = reports;
  summary["dominance_ratio_strictly_increasing"] = increasing;
  write_json(ctx, "bound_sweep.json", summary);
}

void cmd_wlc_sweep(Config& cfg, const RunContext& ctx) {
  const auto pi = read_distribution(cfg, "pi");
  const double h_min = cfg.number("h_min", 0.0);
  const double h_max = cfg.number("h_max", 2.0);
  const auto steps = positive_count(cfg, "h_steps", 201);
  const bool grid = cfg.flag("grid", true);
  const auto resolution = static_cast<int>(positive_count(cfg, "proposal_resolution", 200));
  if (!(h_min >= 0.0) || !(h_max >= h_min)) {
    cfg.fail("h_max", "need 0 <= h_min <= h_max");
  }
  const bool two_atoms = pi.size() == 2;
  if (!two_atoms && !grid) {
    cfg.fail("grid", "closed forms exist only for two atoms; enable the grid oracle");
  }
  cfg.reject_unused();

  const auto n = static_cast<Eigen::Index>(pi.size());
  std::vector<std::string> header{"h", "regime"};
  for (const auto& name : indexed("argmin_p", n)) {
    header.push_back(name);
  }
  header.emplace_back("wlc_value");
  if (grid && two_atoms) {
    for (const auto& name : indexed("grid_argmin_p", n)) {
      header.push_back(name);
    }
    header.emplace_back("grid_wlc_value");
    header.emplace_back("tv_closed_vs_grid");
  }
  auto out = open_output(ctx, "wlc_sweep.csv");
  csv::Writer writer(out, header);

  ordered_json summary;
  auto switches = ordered_json::array();
  std::string last_regime;
  const double big = two_atoms ? std::max(pi[0], pi[1]) : 0.0;
  for (std::size_t k = 0; k < steps; ++k) {
    const double h = steps == 1 ? h_min : h_min + (h_max - h_min) * static_cast<double>(k) / (steps - 1);
    std::vector<std::string> cells{csv::format_number(h)};
    std::optional<WlcSolution> closed;
    std::optional<WlcSolution> oracle;
    std::string regime = "grid";
    if (two_atoms) {
      closed = two_atom_argmin(pi, h);
      regime = h <= -std::log(big) ? "reference" : (h >= -std::log(1.0 - big) ? "uniform" : "pi_h");
    }
    if (grid) {
      oracle = wlc_argmin_grid(WlcProblem{pi, std::nullopt, h}, resolution);
    }
    const WlcSolution& primary = closed ? *closed : *oracle;
    cells.push_back(regime);
    for (const double p : primary.proposal.probs()) {
      cells.push_back(csv::format_number(p));
    }
    cells.push_back(csv::format_number(primary.wlc_value));
    if (closed && oracle) {
      for (const double p : oracle->proposal.probs()) {
        cells.push_back(csv::format_number(p));
      }
      cells.push_back(csv::format_number(oracle->wlc_value));
      cells.push_back(csv::format_number(closed->proposal.total_variation(oracle->proposal)));
    }
    writer.row(cells);
    if (regime != last_regime) {
      switches.push_back({{"h", h}, {"regime", regime}});
      last_regime = regime;
    }
  }
  if (two_atoms) {
    summary["threshold_low"] = -std::log(big);
    summary["threshold_high"] = -std::log(1.0 - big);
  }
  summary["regime_switches"] = switches;
  write_json(ctx, "wlc_sweep.json", summary);
}

void cmd_gibbs_fit(Config& cfg, const RunContext& ctx) {
  enum class Kind { kSingleton, kBox, kBall, kHalfspaces };
  const auto pi = read_distribution(cfg, "pi");
  const auto table = read_statistic(cfg, pi.size());
  const auto d = table.cols();
  const auto kind = choice<Kind>(cfg, "constraint", "singleton",
                                 {{"singleton", Kind::kSingleton},
                                  {"box", Kind::kBox},
                                  {"ball", Kind::kBall},
                                  {"halfspaces", Kind::kHalfspaces}});
  SolverOptions options;
  options.tolerance = cfg.number("tolerance", options.tolerance);
  options.max_iterations = static_cast<int>(positive_count(cfg, "max_iterations", options.max_iterations));
  const auto probes = static_cast<int>(positive_count(cfg, "probes", 1000));
  std::optional<ConvexMomentSet> set;
  try {
    switch (kind) {
      case Kind::kSingleton:
        set = ConvexMomentSet::singleton(read_vector(cfg, "t0", d));
        break;
      case Kind::kBox:
        set = ConvexMomentSet::box(read_vector(cfg, "lo", d), read_vector(cfg, "hi", d));
        break;
      case Kind::kBall:
        set = ConvexMomentSet::ball(read_vector(cfg, "center", d), cfg.number("radius"));
        break;
      case Kind::kHalfspaces: {
        const Matrix a = cfg.matrix("normals");
        if (a.cols() != d) {
          cfg.fail("normals", "rows need one entry per statistic component");
        }
        set = ConvexMomentSet::halfspaces(a, read_vector(cfg, "offsets", a.rows()));
        break;
      }
    }
  } catch (const Error& e) {
    if (e.is_numerical()) {
      throw;
    }
    cfg.fail("constraint", e.what());
  }
  cfg.reject_unused();

  auto family = std::make_shared<const GibbsFamily>(pi, table);
  const auto model = solve_convex_constraint(family, *set, options);
  const auto mu_star = model.distribution();
  Rng rng = Rng(ctx.seed).split("gibbs-fit");
  const Vector moment = family->moment(model.beta);

  auto j = embed(json::to_json(model.parameters()));
  j["moment"] = vector_json(moment);
  j["kl_mu_star_pi"] = number(relative_entropy_finite(mu_star, pi));
  j["moment_in_set"] = set->contains(moment, 1e-9);
  j["first_order_slack"] = number(first_order_slack(model, *set, rng, probes));
  write_json(ctx, "gibbs_fit.json", j);
  auto out = open_output(ctx, "gibbs_fit.csv");
  csv::write_distribution(out, mu_star);
}

void cmd_smc(Config& cfg, const RunContext& ctx) {
  enum class Model { kGaussian, kCategorical };
  enum class Kernel { kNone, kRandomWalk, kIndependence };
  const auto model_kind =
      choice<Model>(cfg, "model", "gaussian", {{"gaussian", Model::kGaussian}, {"categorical", Model::kCategorical}});
  std::unique_ptr<SampleableModel> pi;
  std::optional<Statistic> statistic;
  std::optional<FiniteDistribution> finite;
  std::optional<StatisticTable> table;
  if (model_kind == Model::kGaussian) {
    const double sd = cfg.number("sd", 1.0);
    if (!(sd > 0.0)) {
      cfg.fail("sd", "must be positive");
    }
    pi = std::make_unique<GaussianModel>(cfg.number("mean", 0.0), sd);
    statistic = Statistic::identity(1);
  } else {
    finite = read_distribution(cfg, "pi");
    table = read_statistic(cfg, finite->size());
    pi = std::make_unique<CategoricalModel>(*finite);
    statistic = Statistic::tabulated(*table);
  }
  const Vector beta = read_vector(cfg, "beta", static_cast<Eigen::Index>(statistic->dimension()));
  SmcConfig smc;
  smc.particle_count = positive_count(cfg, "particles", 1000);
  smc.temperature_ladder = uniform_ladder(static_cast<int>(positive_count(cfg, "stages", 20)));
  smc.ess_threshold = cfg.number("ess_threshold", 0.5);
  smc.move_steps = static_cast<int>(positive_count(cfg, "move_steps", 1));
  smc.replicas = static_cast<int>(positive_count(cfg, "replicas", 1));
  smc.resampling = choice<ResamplingScheme>(
      cfg, "resampling", "systematic",
      {{"systematic", ResamplingScheme::kSystematic}, {"multinomial", ResamplingScheme::kMultinomial}});
  const auto kernel = choice<Kernel>(
      cfg, "kernel", model_kind == Model::kGaussian ? "random_walk" : "independence",
      {{"none", Kernel::kNone}, {"random_walk", Kernel::kRandomWalk}, {"independence", Kernel::kIndependence}});
  const double scale = cfg.number("rw_scale", 1.0);
  if (kernel == Kernel::kRandomWalk && model_kind == Model::kCategorical) {
    cfg.fail("kernel", "random_walk needs a continuous model");
  }
  try {
    smc.validate();
  } catch (const Error& e) {
    cfg.fail("ess_threshold", e.what());
  }
  if (kernel == Kernel::kRandomWalk) {
    if (!(scale > 0.0)) {
      cfg.fail("rw_scale", "must be positive");
    }
    smc.move_kernel = std::make_shared<RandomWalkKernel>(scale);
  } else if (kernel == Kernel::kIndependence) {
    smc.move_kernel = std::make_shared<IndependenceKernel>();
  }
  cfg.reject_unused();

  Rng rng = Rng(ctx.seed).split("smc");
  const auto result = run_smc(*pi, *statistic, beta, smc, rng);
  auto j = embed(json::to_json(result));
  if (finite) {
    j["exact_log_z"] = number(log_partition_finite(*finite, *table, beta));
  } else {
    const auto& g = static_cast<const GaussianModel&>(*pi);
    j["exact_log_z"] = number(beta(0) * g.mean()(0) + 0.5 * beta(0) * beta(0) * g.sd() * g.sd());
  }
  write_json(ctx, "smc.json", j);
  {
    auto out = open_output(ctx, "smc_stages.csv");
    csv::Writer writer(out, {"stage", "lambda", "ess", "resampled", "acceptance"});
    for (const auto& s : result.stage_diagnostics) {
      writer.row({std::to_string(s.stage), csv::format_number(s.lambda), csv::format_number(s.ess),
                  s.resampled ? "1" : "0", s.acceptance ? csv::format_number(*s.acceptance) : ""});
    }
  }
  auto out = open_output(ctx, "smc_ensemble.csv");
  csv::write_ensemble(out, result.ensemble);
}

void cmd_cross_entropy(Config& cfg, const RunContext& ctx) {
  enum class Target { kTilt, kLogDensity };
  const auto pi = read_distribution(cfg, "pi");
  const auto table = read_statistic(cfg, pi.size());
  const auto d = table.cols();
  const auto target_kind =
      choice<Target>(cfg, "target", "tilt", {{"tilt", Target::kTilt}, {"log_density", Target::kLogDensity}});
  std::vector<double> target_log(pi.size());
  if (target_kind == Target::kTilt) {
    const Vector target_beta = read_vector(cfg, "target_beta", d);
    const Vector energy = table * target_beta;
    for (std::size_t i = 0; i < target_log.size(); ++i) {
      target_log[i] = energy(static_cast<Eigen::Index>(i));
    }
  } else {
    target_log = cfg.numbers("target_log_density");
    if (target_log.size() != pi.size()) {
      cfg.fail("target_log_density", "needs one entry per atom");
    }
  }
  const Vector beta0 = read_vector(cfg, "beta0", d, Vector::Zero(d));
  CrossEntropyConfig ce;
  ce.options.samples = positive_count(cfg, "samples", 10000);
  ce.options.bootstrap = static_cast<int>(positive_count(cfg, "bootstrap", 200));
  ce.max_iterations = static_cast<int>(positive_count(cfg, "max_iterations", 50));
  ce.beta_tolerance = cfg.number("tolerance", 1e-3);
  ce.confidence = cfg.flag("confidence", false);
  ce.z_multiplier = cfg.number("z", 3.0);
  if (!(ce.z_multiplier >= 0.0)) {
    cfg.fail("z", "must be nonnegative");
  }
  cfg.reject_unused();

  auto family = std::make_shared<const GibbsFamily>(pi, table);
  Rng rng = Rng(ctx.seed).split("cross-entropy");
  const auto run = run_cross_entropy(family, target_log, beta0, ce, rng);

  auto out = open_output(ctx, "cross_entropy.csv");
  std::vector<std::string> header{"k"};
  for (const auto& name : indexed("beta_", d)) {
    header.push_back(name);
  }
  header.emplace_back("ess");
  for (const auto& name : indexed("moment_", d)) {
    header.push_back(name);
  }
  csv::Writer writer(out, header);
  for (const auto& state : run.trajectory) {
    std::vector<std::string> cells{std::to_string(state.iteration)};
    for (Eigen::Index i = 0; i < d; ++i) {
      cells.push_back(csv::format_number(state.beta(i)));
    }
    cells.push_back(state.ensemble ? csv::format_number(state.ess) : std::string());
    for (Eigen::Index i = 0; i < d; ++i) {
      cells.push_back(csv::format_number(state.moment(i)));
    }
    writer.row(cells);
  }
  // Exact target moment on the finite space, the fixed point of moment matching.
  const auto target = FiniteDistribution::from_weights(normalized_weights(target_log));
  const Vector target_moment = table.transpose() * to_vector(target.probs());
  auto j = embed(json::to_json(run));
  j["target_moment"] = vector_json(target_moment);
  j["final_moment"] = vector_json(family->moment(run.model.beta));
  write_json(ctx, "cross_entropy.json", j);
}

void cmd_nstar(Config& cfg, const RunContext& ctx) {
  enum class Kind { kThreePoint, kTwoAtom, kDiscrete };
  const auto kind = choice<Kind>(
      cfg, "y", "three_point",
      {{"three_point", Kind::kThreePoint}, {"two_atom", Kind::kTwoAtom}, {"discrete", Kind::kDiscrete}});
  std::optional<DiscreteY> y;
  try {
    switch (kind) {
      case Kind::kThreePoint:
        y = DiscreteY::three_point({cfg.number("l1", 1e6), cfg.number("r", 1e-4), cfg.number("alpha", 0.01)});
        break;
      case Kind::kTwoAtom:
        y = DiscreteY::two_atom(cfg.number("epsilon", 1e-3));
        break;
      case Kind::kDiscrete:
        y = DiscreteY(cfg.numbers("values"), cfg.numbers("probs"));
        break;
    }
  } catch (const Error& e) {
    cfg.fail("y", e.what());
  }
  DeviationProbeConfig probe;
  probe.delta = cfg.number("delta", 0.5);
  probe.p_alpha = cfg.number("p_alpha", 0.5);
  probe.replications = static_cast<int>(positive_count(cfg, "replications", 10000));
  probe.bootstrap = static_cast<int>(positive_count(cfg, "bootstrap", 200));
  const double n_min = cfg.number("n_min", 1.0);
  const double n_max = cfg.number("n_max", 1e8);
  const auto n_points = static_cast<int>(positive_count(cfg, "n_points", 49));
  const auto variant = choice<BoundVariant>(cfg, "variant", "single_gap",
                                            {{"single_gap", BoundVariant::kSingleGap},
                                             {"double_gap", BoundVariant::kDoubleGap}});
  try {
    probe.n_grid = log_spaced_grid(n_min, n_max, n_points);
    probe.validate();
  } catch (const Error& e) {
    cfg.fail("n_min", e.what());
  }
  cfg.reject_unused();

  const auto [eta, mu] = y->distributions();
  const auto bound = bound_report(eta, mu, c_constant(probe.delta, probe.p_alpha), variant);
  Rng rng = Rng(ctx.seed).split("nstar");
  const auto critical = empirical_critical_n(*y, probe, rng);
  const double ln_n = std::log(critical.n_star);

  ordered_json j;
  j["critical_n"] = embed(json::to_json(critical));
  j["bound"] = embed(json::to_json(bound));
  j["ln_n_star"] = number(ln_n);
  j["inside_bracket"] = ln_n >= bound.ln_nstar_interval.first && ln_n <= bound.ln_nstar_interval.second;
  write_json(ctx, "nstar.json", j);
  auto out = open_output(ctx, "nstar_curve.csv");
  csv::Writer writer(out, {"n", "p_dev_raw", "p_dev_monotone"});
  for (std::size_t i = 0; i < critical.grid.size(); ++i) {
    writer.row({static_cast<double>(critical.grid[i]), critical.p_dev_raw[i], critical.p_dev_monotone[i]});
  }
}

int run(const std::vector<std::string>& args) {
  CLI::App app{"entis: entropy costs, Gibbs proposals and sample-size bounds for importance sampling"};
  app.require_subcommand(1);
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;

  using Command = std::function<void(Config&, const RunContext&)>;
  const std::vector<std::tuple<std::string, std::string, Command>> commands{
      {"entropy", "relative and Rényi entropies of a distribution pair", cmd_entropy},
      {"bound-sweep", "three-point entropy versus variance sweep", cmd_bound_sweep},
      {"wlc-sweep", "worst-case log-cost argmin over an entropy budget grid", cmd_wlc_sweep},
      {"gibbs-fit", "entropy projection onto a moment constraint set", cmd_gibbs_fit},
      {"smc", "tempered SMC sampling and normalizing constant", cmd_smc},
      {"cross-entropy", "cross-entropy adaptive importance sampling", cmd_cross_entropy},
      {"nstar", "empirical critical sample size against the entropy bracket", cmd_nstar},
  };
  std::map<CLI::App*, const Command*> handlers;
  for (const auto& [name, description, handler] : commands) {
    auto* sub = app.add_subcommand(name, description);
    sub->add_option("--config", config_path, "flat YAML config file")->required();
    sub->add_option("--seed", seed, "random seed, overrides the config");
    sub->add_option("--out", out_dir, "output directory, overrides the config");
    handlers[sub] = &handler;
  }

  std::vector<const char*> argv{"entis"};
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  const Command* handler = nullptr;
  std::string name;
  for (const auto& [sub, h] : handlers) {
    if (sub->parsed()) {
      handler = h;
      name = sub->get_name();
    }
  }
  try {
    auto cfg = Config::load(config_path);
    RunContext ctx;
    const auto config_seed = cfg.unsigned_integer("seed");
    if (!seed && !config_seed) {
      cfg.fail("seed", "a seed is required in the config or via --seed");
    }
    ctx.seed = seed ? *seed : *config_seed;
    const auto config_out = cfg.text("output_dir", "out");
    ctx.out = out_dir ? *out_dir : config_out;
    (*handler)(cfg, ctx);
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "entis " << name << ": " << e.what() << '\n';
    return e.is_numerical() ? kExitNumerical : kExitValidation;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "entis " << name << ": " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "entis " << name << ": " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace entis::cli
