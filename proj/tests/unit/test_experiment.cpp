// SPDX-License-Identifier: Apache-2.0
//
// risest: training and reflection-pattern design for non-ideal RIS channel estimation
// Copyright (C) 2026 The risest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <cmath>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "risest/experiment.hpp"

using namespace risest;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.M = 4;
  cfg.trials = 5;
  cfg.snr_db = {0.0, 10.0};
  return cfg;
}

std::string sweep_csv(const ExperimentConfig& cfg) {
  std::ostringstream out;
  write_results_csv(out, run_sweep(cfg));
  return out.str();
}

}  // namespace

TEST_CASE("config file parsing") {
  std::istringstream in("# comment\n\nm = 6\nsnr-db=-5,5\nscheme=proposed,grouped:2\nestimator=both\n");
  const ExperimentConfig cfg = parse_config(in, "test.cfg");
  CHECK(cfg.M == 6);
  CHECK(cfg.snr_db == std::vector<double>{-5.0, 5.0});
  REQUIRE(cfg.schemes.size() == 2);
  CHECK(cfg.schemes[1].rho == 2);
  CHECK(cfg.estimators.size() == 2);

  std::istringstream bad("m=4\n\nbeta-min=banana\n");
  try {
    parse_config(bad, "x.cfg");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("x.cfg:3: ") != std::string::npos);
  }
  std::istringstream nokey("novalue\n");
  CHECK_THROWS_AS(parse_config(nokey, "y.cfg"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/file.cfg"), ConfigError);
}

TEST_CASE("config setters and validation") {
  ExperimentConfig cfg;
  CHECK_THROWS_AS(cfg.set("frobnicate", "1"), ConfigError);
  CHECK_THROWS_AS(cfg.set("m", "-1"), ConfigError);
  CHECK_THROWS_AS(cfg.set("trials", "1.5"), ConfigError);
  CHECK_THROWS_AS(cfg.set("scheme", "optimal"), ConfigError);

  cfg.set("b", "4");
  CHECK_THROWS_AS(cfg.validate(), ConfigError);  // B < M+1
  cfg = ExperimentConfig{};
  cfg.set("tau", "1");
  CHECK_THROWS_AS(cfg.validate(), ConfigError);  // tau < K
  cfg = ExperimentConfig{};
  cfg.set("beta-min", "1.5");
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = ExperimentConfig{};
  cfg.set("scheme", "grouped:3");
  CHECK_THROWS_AS(cfg.validate(), ConfigError);  // 3 does not divide 8
  cfg = ExperimentConfig{};
  cfg.set("scheme", "grouped");
  cfg.set("rho", "4");
  CHECK_NOTHROW(cfg.validate());

  const ExperimentConfig full = ExperimentConfig::profile("paper");
  CHECK(full.K == 4);
  CHECK(full.M == 20);
  CHECK(full.L == 16);
  CHECK_THROWS_AS(ExperimentConfig::profile("huge"), ConfigError);
}

TEST_CASE("noise variance") {
  CHECK(noise_variance(0.0, 1.0) == doctest::Approx(1.0));
  CHECK(noise_variance(10.0, 1.0) == doctest::Approx(0.1));
  CHECK(noise_variance(-5.0, 2.0) == doctest::Approx(2.0 * std::pow(10.0, 0.5)));
}

TEST_CASE("sweeps are reproducible") {
  ExperimentConfig cfg = small_config();
  cfg.estimators = {Estimator::LS, Estimator::LMMSE};
  const std::string a = sweep_csv(cfg);
  const std::string b = sweep_csv(cfg);
  CHECK(a == b);
  cfg.seed = 2;
  CHECK(sweep_csv(cfg) != a);
  CHECK(a.rfind("scheme,estimator,snr_db,trial,analytic_nmse,empirical_nmse,iterations,wall_ms\n", 0) == 0);
}

TEST_CASE("all schemes see the same channel draws") {
  ExperimentConfig cfg = small_config();
  cfg.schemes = {SchemeId::parse("naive"), SchemeId::parse("naive")};
  const auto rows = run_sweep(cfg);
  const std::size_t half = rows.size() / 2;
  for (std::size_t i = 0; i < half; ++i) CHECK(rows[i].empirical_nmse == rows[half + i].empirical_nmse);
}

TEST_CASE("proposed equals the ideal design when the amplitude is constant") {
  ExperimentConfig cfg = small_config();
  cfg.model = ReflectionModel::ideal();
  for (const Estimator est : {Estimator::LS, Estimator::LMMSE}) {
    const auto p = design_scheme(cfg, SchemeId::parse("proposed"), est, 0.0);
    const auto i = design_scheme(cfg, SchemeId::parse("ideal"), est, 0.0);
    const double s2 = noise_variance(0.0, cfg.power);
    CHECK(analytic_mse(p, s2, cfg.L) == doctest::Approx(analytic_mse(i, s2, cfg.L)).epsilon(1e-9));
  }
}

TEST_CASE("NMSE decreases with SNR") {
  ExperimentConfig cfg;
  cfg.simulate = false;
  cfg.trials = 1;
  cfg.estimators = {Estimator::LS, Estimator::LMMSE};
  const auto summary = summarize(run_sweep(cfg));
  for (std::size_t i = 1; i < summary.size(); ++i)
    if (summary[i].scheme == summary[i - 1].scheme && summary[i].estimator == summary[i - 1].estimator)
      CHECK(summary[i].analytic_nmse < summary[i - 1].analytic_nmse);
}

TEST_CASE("analytic ordering at the desk profile") {
  ExperimentConfig cfg;
  cfg.simulate = false;
  cfg.trials = 1;
  cfg.estimators = {Estimator::LS, Estimator::LMMSE};
  const auto summary = summarize(run_sweep(cfg));
  auto get = [&](const std::string& s, const std::string& e, double snr) {
    for (const auto& r : summary)
      if (r.scheme == s && r.estimator == e && r.snr_db == snr) return r.analytic_nmse;
    FAIL("missing row");
    return 0.0;
  };
  for (const double snr : cfg.snr_db)
    for (const char* e : {"ls", "lmmse"}) {
      CHECK(get("proposed", e, snr) <= get("ideal-projection", e, snr));
      CHECK(get("proposed", e, snr) <= get("naive", e, snr));
      CHECK(get("naive", e, snr) <= get("onoff", e, snr));
      CHECK(get("proposed", "lmmse", snr) < get("proposed", "ls", snr));
    }
}

TEST_CASE("empirical NMSE tracks the analytic value") {
  ExperimentConfig cfg;
  cfg.schemes = {SchemeId::parse("proposed")};
  cfg.estimators = {Estimator::LS, Estimator::LMMSE};
  cfg.snr_db = {0.0};
  cfg.trials = 4000;
  for (const auto& r : summarize(run_sweep(cfg))) {
    REQUIRE(r.has_empirical);
    CHECK(r.empirical_nmse == doctest::Approx(r.analytic_nmse).epsilon(0.05));
  }
}

TEST_CASE("grouped scheme reduces overhead") {
  ExperimentConfig cfg;
  const auto g = design_scheme(cfg, SchemeId::parse("grouped:4"), Estimator::LS, 0.0);
  CHECK(g.V.matrix().rows() == 3);
  CHECK(g.V.matrix().cols() == 3);
  CHECK(g.effective_M == 2);
  CHECK(g.R.rows() == 6);
  const auto lm = design_scheme(cfg, SchemeId::parse("grouped:2"), Estimator::LMMSE, 0.0);
  CHECK(std::isfinite(analytic_mse(lm, 1.0, cfg.L)));
}

TEST_CASE("convergence traces") {
  ExperimentConfig cfg = small_config();
  cfg.estimators = {Estimator::LS, Estimator::LMMSE};
  const auto rows = run_convergence(cfg);
  REQUIRE(!rows.empty());
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].algorithm == rows[i - 1].algorithm && rows[i].estimator == rows[i - 1].estimator) {
      CHECK(rows[i].objective <= rows[i - 1].objective * (1.0 + 1e-12));
      CHECK(rows[i].mm_calls >= rows[i - 1].mm_calls);
    }
  std::ostringstream a, b;
  write_convergence_csv(a, rows);
  write_convergence_csv(b, run_convergence(cfg));
  CHECK(a.str() == b.str());
}

TEST_CASE("validation passes on the desk profile") {
  for (const auto& r : run_validation(ExperimentConfig{})) {
    INFO(r.name << " " << r.detail);
    CHECK(r.passed);
  }
}

TEST_CASE("number formatting and design output") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  const auto d = design_scheme(small_config(), SchemeId::parse("onoff"), Estimator::LS, 0.0);
  std::ostringstream out;
  write_design_csv(out, d);
  const std::string s = out.str();
  CHECK(s.rfind("matrix,row,col,re,im\n", 0) == 0);
  CHECK(s.find("V,4,4,1,0\n") != std::string::npos);
  CHECK(s.find("V,0,1,0,0\n") != std::string::npos);
}
