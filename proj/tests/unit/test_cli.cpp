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

#include <gmock/gmock.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "entis/errors.hpp"
#include "entis/serialization.hpp"

namespace {

namespace fs = std::filesystem;
using entis::cli::run;

std::string config(const std::string& name) { return std::string(ENTIS_CONFIG_DIR) + "/" + name; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("entis_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write_config(const std::string& text) {
    fs::create_directories(dir_);
    const auto p = dir_ / "cfg.yaml";
    std::ofstream(p) << text;
    return p;
  }

  fs::path dir_;
};

TEST_F(Cli, EntropyTwoAtom) {
  ASSERT_EQ(run({"entropy", "--config", config("entropy_two_atom.yaml"), "--out", dir_.string()}), 0);
  const auto rep = entis::json::entropy_report_from_json(slurp(dir_ / "entropy_report.json"));
  EXPECT_NEAR(rep.kl, -std::log(0.7), 1e-12);
  const auto csv = slurp(dir_ / "renyi_profile.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "alpha,value");
}

TEST_F(Cli, EntropyGaussianShift) {
  ASSERT_EQ(run({"entropy", "--config", config("entropy_gaussian.yaml"), "--out", dir_.string()}), 0);
  const auto rep = entis::json::entropy_report_from_json(slurp(dir_ / "entropy_report.json"));
  EXPECT_FALSE(rep.estimator.exact);
  EXPECT_NEAR(rep.kl, 0.125, 3.0 * rep.estimator.std_error);
}

TEST_F(Cli, SeedOverridesConfigAndRunsAreDeterministic) {
  const auto a = dir_ / "a", b = dir_ / "b", c = dir_ / "c";
  ASSERT_EQ(run({"smc", "--config", config("smc_categorical.yaml"), "--out", a.string(), "--seed", "5"}), 0);
  ASSERT_EQ(run({"smc", "--config", config("smc_categorical.yaml"), "--out", b.string(), "--seed", "5"}), 0);
  ASSERT_EQ(run({"smc", "--config", config("smc_categorical.yaml"), "--out", c.string(), "--seed", "6"}), 0);
  EXPECT_EQ(slurp(a / "smc.json"), slurp(b / "smc.json"));
  EXPECT_NE(slurp(a / "smc.json"), slurp(c / "smc.json"));
  EXPECT_EQ(slurp(a / "smc_stages.csv").substr(0, 33), "stage,lambda,ess,resampled,accept");
}

TEST_F(Cli, UnknownKeyIsValidationErrorWithLine) {
  const auto cfg = write_config("seed: 1\neta: [1.0, 0.0]\nmu: [0.7, 0.3]\nbogus: 3\n");
  testing::internal::CaptureStderr();
  EXPECT_EQ(run({"entropy", "--config", cfg.string(), "--out", dir_.string()}), 2);
  const auto err = testing::internal::GetCapturedStderr();
  EXPECT_THAT(err, ::testing::HasSubstr("cfg.yaml:4"));
  EXPECT_THAT(err, ::testing::HasSubstr("bogus"));
}

TEST_F(Cli, ValidationErrors) {
  testing::internal::CaptureStderr();
  EXPECT_EQ(run({"entropy", "--config", (dir_ / "missing.yaml").string()}), 2);
  EXPECT_EQ(run({"no-such-command"}), 2);
  const auto bad = write_config("seed: 1\neta: [-0.5, 1.5]\nmu: [0.7, 0.3]\n");
  EXPECT_EQ(run({"entropy", "--config", bad.string(), "--out", dir_.string()}), 2);
  const auto noseed = write_config("eta: [1.0, 0.0]\nmu: [0.7, 0.3]\n");
  EXPECT_EQ(run({"entropy", "--config", noseed.string(), "--out", dir_.string()}), 2);
  testing::internal::GetCapturedStderr();
}

TEST_F(Cli, NumericalFailureExitCode) {
  const auto cfg = write_config("seed: 1\npi: [0.5, 0.5]\nstatistic: [0.0, 1.0]\nconstraint: singleton\nt0: [1.5]\n");
  testing::internal::CaptureStderr();
  const int code = run({"gibbs-fit", "--config", cfg.string(), "--out", dir_.string()});
  testing::internal::GetCapturedStderr();
  EXPECT_EQ(code, 3);
}

TEST_F(Cli, WlcSweepRegimeSwitches) {
  ASSERT_EQ(run({"wlc-sweep", "--config", config("wlc_sweep.yaml"), "--out", dir_.string()}), 0);
  const auto csv = slurp(dir_ / "wlc_sweep.csv");
  EXPECT_THAT(csv, ::testing::StartsWith("h,regime,"));
  const auto json = slurp(dir_ / "wlc_sweep.json");
  EXPECT_THAT(json, ::testing::HasSubstr("regime_switches"));
}

TEST_F(Cli, BoundSweepAndGibbsFitAndCrossEntropy) {
  ASSERT_EQ(run({"bound-sweep", "--config", config("bound_sweep.yaml"), "--out", dir_.string()}), 0);
  EXPECT_THAT(slurp(dir_ / "bound_sweep.csv"), ::testing::StartsWith("l1,r,alpha,ent,ln_var,gap,theta_star,slack_r,dominance_ratio\n"));
  ASSERT_EQ(run({"gibbs-fit", "--config", config("gibbs_fit_box.yaml"), "--out", dir_.string()}), 0);
  const auto params = entis::json::gibbs_parameters_from_json(slurp(dir_ / "gibbs_fit.json"));
  EXPECT_EQ(params.beta.size(), 2);
  ASSERT_EQ(run({"cross-entropy", "--config", config("cross_entropy.yaml"), "--out", dir_.string()}), 0);
  EXPECT_THAT(slurp(dir_ / "cross_entropy.csv"), ::testing::StartsWith("k,beta_"));
}

TEST_F(Cli, NstarThreePointInsideBracket) {
  ASSERT_EQ(run({"nstar", "--config", config("nstar_three_point.yaml"), "--out", dir_.string()}), 0);
  EXPECT_THAT(slurp(dir_ / "nstar.json"), ::testing::HasSubstr("\"inside_bracket\": true"));
}

TEST(Config, TypedAccessorsAndLineNumbers) {
  auto cfg = entis::cli::Config::parse("a: 1.5\nb: [1, 2]\nc: [[1, 2], [3, 4]]\nd: true\nname: x\n", "t.yaml");
  EXPECT_EQ(cfg.number("a"), 1.5);
  EXPECT_EQ(cfg.numbers("b"), (std::vector<double>{1, 2}));
  EXPECT_EQ(cfg.matrix("c")(1, 0), 3.0);
  EXPECT_TRUE(cfg.flag("d", false));
  EXPECT_EQ(cfg.text("name", ""), "x");
  EXPECT_EQ(cfg.number("missing", 7.0), 7.0);
  EXPECT_NO_THROW(cfg.reject_unused());
  try {
    (void)cfg.number("name");
    FAIL();
  } catch (const entis::Error& e) {
    EXPECT_THAT(e.what(), ::testing::HasSubstr("t.yaml:5"));
  }
}

}  // namespace
