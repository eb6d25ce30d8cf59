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

#include "entis/serialization.hpp"

#include <cmath>

#include "entis/errors.hpp"
#include "json.hpp"

namespace entis::json {

namespace {

using nlohmann::ordered_json;

ordered_json number(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json number(const std::optional<double>& v) { return v ? number(*v) : ordered_json(nullptr); }

ordered_json vector(const Vector& v) {
  auto out = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back(number(v(i)));
  }
  return out;
}

template <typename Range>
ordered_json numbers(const Range& values) {
  auto out = ordered_json::array();
  for (const auto v : values) {
    out.push_back(number(static_cast<double>(v)));
  }
  return out;
}

ordered_json distribution(const FiniteDistribution& d) {
  ordered_json out = ordered_json::object();
  out["atoms"] = d.atoms();
  out["probs"] = numbers(d.probs());
  return out;
}

double read_number(const ordered_json& j, double null_value) {
  if (j.is_null()) {
    return null_value;
  }
  if (!j.is_number()) {
    throw Error(ErrorKind::kInvalidArgument, "expected a number in JSON input");
  }
  return j.get<double>();
}

ordered_json parse(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kInvalidArgument, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::string to_json(const EntropyReport& report) {
  ordered_json j;
  j["kl"] = number(report.kl);
  auto renyi = ordered_json::array();
  for (const auto& [order, value] : report.renyi) {
    renyi.push_back(ordered_json::array({number(order), number(value)}));
  }
  j["renyi"] = renyi;
  j["log_likelihood_variance"] = number(report.log_likelihood_variance);
  if (report.estimator.exact) {
    j["estimator"] = {{"kind", "exact"}};
  } else {
    j["estimator"] = {{"kind", "monte_carlo"},
                      {"samples", report.estimator.samples},
                      {"std_error", number(report.estimator.std_error)}};
  }
  return j.dump(2);
}

EntropyReport entropy_report_from_json(const std::string& text) {
  const auto j = parse(text);
  try {
    EntropyReport report;
    report.kl = read_number(j.at("kl"), kInf);
    for (const auto& entry : j.at("renyi")) {
      report.renyi.emplace_back(read_number(entry.at(0), kInf), read_number(entry.at(1), kInf));
    }
    report.log_likelihood_variance = read_number(j.at("log_likelihood_variance"), kInf);
    const auto& est = j.at("estimator");
    const auto kind = est.at("kind").get<std::string>();
    if (kind != "exact" && kind != "monte_carlo") {
      throw Error(ErrorKind::kInvalidArgument, "unknown estimator kind '" + kind + "'");
    }
    report.estimator.exact = kind == "exact";
    if (!report.estimator.exact) {
      report.estimator.samples = est.at("samples").get<std::size_t>();
      report.estimator.std_error = read_number(est.at("std_error"), kInf);
    }
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kInvalidArgument, std::string("entropy report JSON: ") + e.what());
  }
}

std::string to_json(const GibbsParameters& params) {
  ordered_json j;
  j["beta"] = vector(params.beta);
  j["log_partition"] = number(params.log_partition.value);
  j["log_partition_std_error"] = number(params.log_partition.std_error);
  j["statistic_id"] = params.statistic_id;
  j["reference_id"] = params.reference_id;
  return j.dump(2);
}

GibbsParameters gibbs_parameters_from_json(const std::string& text) {
  const auto j = parse(text);
  try {
    GibbsParameters params;
    const auto& beta = j.at("beta");
    params.beta.resize(static_cast<Eigen::Index>(beta.size()));
    for (std::size_t i = 0; i < beta.size(); ++i) {
      if (beta[i].is_null()) {
        throw Error(ErrorKind::kInvalidArgument, "beta entries must be finite");
      }
      params.beta(static_cast<Eigen::Index>(i)) = beta[i].get<double>();
    }
    params.log_partition.value = read_number(j.at("log_partition"), kInf);
    if (const auto& se = j.at("log_partition_std_error"); !se.is_null()) {
      params.log_partition.std_error = se.get<double>();
    }
    params.statistic_id = j.at("statistic_id").get<std::string>();
    params.reference_id = j.at("reference_id").get<std::string>();
    return params;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kInvalidArgument, std::string("Gibbs parameters JSON: ") + e.what());
  }
}

std::string to_json(const SmcResult& result) {
  ordered_json j;
  j["log_z_estimate"] = number(result.log_z_estimate);
  j["log_z_std_error"] = number(result.log_z_std_error);
  j["replica_log_z"] = numbers(result.replica_log_z);
  j["particle_count"] = result.ensemble.size();
  j["final_ess"] = number(effective_sample_size(result.ensemble));
  auto stages = ordered_json::array();
  for (const auto& s : result.stage_diagnostics) {
    stages.push_back({{"stage", s.stage},
                      {"lambda", number(s.lambda)},
                      {"ess", number(s.ess)},
                      {"resampled", s.resampled},
                      {"acceptance", number(s.acceptance)}});
  }
  j["stage_diagnostics"] = stages;
  j["warnings"] = result.warnings;
  return j.dump(2);
}

std::string to_json(const BoundReport& report) {
  ordered_json j;
  j["ent"] = number(report.ent);
  j["theta_star"] = number(report.theta_star);
  j["slack_r"] = number(report.slack_r);
  j["c_constant"] = number(report.c_constant);
  j["ln_nstar_interval"] = {number(report.ln_nstar_interval.first), number(report.ln_nstar_interval.second)};
  j["variant"] = to_string(report.variant);
  return j.dump(2);
}

std::string to_json(const ThreePointReport& report) {
  ordered_json j;
  j["l1"] = number(report.params.l1);
  j["r"] = number(report.params.r);
  j["alpha"] = number(report.params.alpha);
  j["ent"] = number(report.ent);
  j["ln_var"] = number(report.ln_var);
  j["gap"] = number(report.gap);
  j["theta_star"] = number(report.theta_star);
  j["slack_r"] = number(report.slack_r);
  j["dominance_ratio"] = number(report.dominance_ratio);
  j["c_constant"] = number(report.c_constant);
  j["regime_ratio"] = number(report.regime_ratio);
  return j.dump(2);
}

std::string to_json(const WlcSolution& solution) {
  ordered_json j;
  j["proposal"] = distribution(solution.proposal);
  j["wlc_value"] = number(solution.wlc_value);
  j["worst_target"] = distribution(solution.worst_target);
  j["method"] = to_string(solution.method);
  return j.dump(2);
}

std::string to_json(const CriticalNResult& result) {
  ordered_json j;
  j["n_star"] = number(result.n_star);
  j["ln_n_star"] = number(std::log(result.n_star));
  j["ci"] = {number(result.ci_low), number(result.ci_high)};
  j["no_deviation_ever"] = result.no_deviation_ever;
  j["grid"] = result.grid;
  j["p_dev_raw"] = numbers(result.p_dev_raw);
  j["p_dev_monotone"] = numbers(result.p_dev_monotone);
  return j.dump(2);
}

std::string to_json(const CrossEntropyRun& run) {
  ordered_json j;
  j["iterations"] = run.trajectory.empty() ? 0 : run.trajectory.back().iteration;
  j["converged"] = run.converged;
  const auto params = run.model.parameters();
  j["beta"] = vector(params.beta);
  j["log_partition"] = number(params.log_partition.value);
  if (!run.trajectory.empty() && run.trajectory.back().beta_std_error.size() > 0) {
    j["beta_std_error"] = vector(run.trajectory.back().beta_std_error);
  }
  j["statistic_id"] = params.statistic_id;
  j["reference_id"] = params.reference_id;
  auto warnings = ordered_json::array();
  for (const auto& state : run.trajectory) {
    for (const auto& w : state.warnings) {
      warnings.push_back("iteration " + std::to_string(state.iteration) + ": " + w);
    }
  }
  j["warnings"] = warnings;
  return j.dump(2);
}

std::string to_json(const StripLowerBoundCheck& check) {
  ordered_json j;
  j["slack"] = number(check.slack);
  j["slack_reverse"] = number(check.slack_reverse);
  j["ent_eta_mu"] = number(check.ent_eta_mu);
  j["ent_pi_mu"] = number(check.ent_pi_mu);
  j["ent_mu_pi"] = number(check.ent_mu_pi);
  return j.dump(2);
}

namespace {

template <typename Fn>
auto guarded(const std::string& what, Fn&& fn) {
  try {
    return fn();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kInvalidArgument, what + " JSON: " + e.what());
  }
}

FiniteDistribution read_distribution(const ordered_json& j) {
  std::vector<double> probs;
  for (const auto& p : j.at("probs")) {
    probs.push_back(read_number(p, 0.0));
  }
  return FiniteDistribution(j.at("atoms").get<std::vector<std::string>>(), std::move(probs));
}

}  // namespace

BoundReport bound_report_from_json(const std::string& text) {
  const auto j = parse(text);
  return guarded("bound report", [&] {
    BoundReport r;
    r.ent = read_number(j.at("ent"), kInf);
    r.theta_star = read_number(j.at("theta_star"), kInf);
    r.slack_r = read_number(j.at("slack_r"), kInf);
    r.c_constant = read_number(j.at("c_constant"), kInf);
    r.ln_nstar_interval = {read_number(j.at("ln_nstar_interval").at(0), kNegInf),
                           read_number(j.at("ln_nstar_interval").at(1), kInf)};
    r.variant = bound_variant_from_string(j.at("variant").get<std::string>());
    return r;
  });
}

ThreePointReport three_point_report_from_json(const std::string& text) {
  const auto j = parse(text);
  return guarded("three-point report", [&] {
    ThreePointReport r;
    r.params = {read_number(j.at("l1"), kInf), read_number(j.at("r"), kInf), read_number(j.at("alpha"), kInf)};
    r.ent = read_number(j.at("ent"), kInf);
    r.ln_var = read_number(j.at("ln_var"), kInf);
    r.gap = read_number(j.at("gap"), kInf);
    r.theta_star = read_number(j.at("theta_star"), kInf);
    r.slack_r = read_number(j.at("slack_r"), kInf);
    r.dominance_ratio = read_number(j.at("dominance_ratio"), kInf);
    r.c_constant = read_number(j.at("c_constant"), kInf);
    r.regime_ratio = read_number(j.at("regime_ratio"), kInf);
    return r;
  });
}

WlcSolution wlc_solution_from_json(const std::string& text) {
  const auto j = parse(text);
  return guarded("WLC solution", [&] {
    const auto method = j.at("method").get<std::string>();
    if (method != "closed_form" && method != "grid_oracle") {
      throw Error(ErrorKind::kInvalidArgument, "unknown WLC method '" + method + "'");
    }
    return WlcSolution{read_distribution(j.at("proposal")), read_number(j.at("wlc_value"), kInf),
                       read_distribution(j.at("worst_target")),
                       method == "closed_form" ? WlcMethod::kClosedForm : WlcMethod::kGridOracle};
  });
}

CriticalNResult critical_n_from_json(const std::string& text) {
  const auto j = parse(text);
  return guarded("critical N", [&] {
    CriticalNResult r;
    r.n_star = read_number(j.at("n_star"), kInf);
    r.ci_low = read_number(j.at("ci").at(0), kInf);
    r.ci_high = read_number(j.at("ci").at(1), kInf);
    r.no_deviation_ever = j.at("no_deviation_ever").get<bool>();
    r.grid = j.at("grid").get<std::vector<std::uint64_t>>();
    for (const auto& p : j.at("p_dev_raw")) {
      r.p_dev_raw.push_back(read_number(p, kInf));
    }
    for (const auto& p : j.at("p_dev_monotone")) {
      r.p_dev_monotone.push_back(read_number(p, kInf));
    }
    return r;
  });
}

}  // namespace entis::json
