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

// Command-line front end: sweep, converge, design, validate.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "risest/experiment.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

// Flags whose value is forwarded verbatim to ExperimentConfig::set.
const std::vector<std::pair<std::string, std::string>> kValueFlags = {
    {"m", "RIS elements"},
    {"k", "users"},
    {"l", "BS antennas"},
    {"b", "subframes (default M+1)"},
    {"tau", "pilot length per subframe (default K)"},
    {"power", "per-user power budget"},
    {"snr-db", "comma-separated SNR list in dB"},
    {"trials", "Monte Carlo trials per SNR"},
    {"seed", "base seed"},
    {"beta-min", "minimum reflection amplitude"},
    {"alpha", "amplitude-law steepness"},
    {"delta", "amplitude-law phase offset [rad]"},
    {"psi-ue", "UE-side correlation coefficient"},
    {"psi-ris", "RIS-side correlation coefficient"},
    {"psi-bs", "BS-side correlation coefficient"},
    {"scheme", "comma-separated schemes: proposed, ideal, ideal-projection, naive, onoff, grouped[:rho]"},
    {"estimator", "ls, lmmse or both"},
    {"eps", "relative-change stopping threshold"},
    {"max-iter", "iteration budget (0 = default)"},
    {"grid-points", "phase-search grid size"},
    {"rho", "grouping factor for 'grouped'"},
    {"init", "initial pattern: naive or random"},
};

struct CommonArgs {
  std::string config_file;
  std::string profile;
  std::string output;
  std::string plot_data;
  bool accel = false;
  bool timing = false;
  bool no_simulate = false;
  std::map<std::string, std::string> values;
};

void add_common(CLI::App* app, CommonArgs& args) {
  app->add_option("--config", args.config_file, "key=value configuration file");
  app->add_option("--profile", args.profile, "parameter profile: desk or paper");
  app->add_option("--output,-o", args.output, "output file (default stdout)");
  app->add_flag("--accel", args.accel, "wrap the MM updates in SQUAREM");
  app->add_flag("--timing", args.timing, "record wall-clock times");
  for (const auto& [key, help] : kValueFlags) app->add_option("--" + key, args.values[key], help);
}

risest::ExperimentConfig build_config(const CommonArgs& args) {
  risest::ExperimentConfig cfg;
  if (!args.profile.empty()) cfg = risest::ExperimentConfig::profile(args.profile);
  if (!args.config_file.empty()) cfg = risest::load_config(args.config_file, cfg);
  for (const auto& [key, help] : kValueFlags) {
    const auto it = args.values.find(key);
    if (it != args.values.end() && !it->second.empty()) cfg.set(key, it->second);
  }
  if (args.accel) cfg.design.accelerate = true;
  if (args.timing) cfg.timing = true;
  if (args.no_simulate) cfg.simulate = false;
  cfg.validate();
  return cfg;
}

template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw risest::ConfigError("cannot open output file '" + path + "'");
  fn(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Training and reflection-pattern design for RIS channel estimation"};
  app.require_subcommand(1);

  CommonArgs sweep_args, conv_args, design_args, valid_args;
  auto* sweep = app.add_subcommand("sweep", "Monte Carlo NMSE sweep over schemes and SNR");
  add_common(sweep, sweep_args);
  sweep->add_option("--plot-data", sweep_args.plot_data, "also write per-SNR means in gnuplot block layout");
  sweep->add_flag("--no-simulate", sweep_args.no_simulate, "analytic NMSE only");

  auto* converge = app.add_subcommand("converge", "Objective traces of plain and accelerated MM");
  add_common(converge, conv_args);

  auto* design = app.add_subcommand("design", "Dump the designed X and V of one scheme");
  add_common(design, design_args);

  auto* validate = app.add_subcommand("validate", "Run the invariant checks on a configuration");
  add_common(validate, valid_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (sweep->parsed()) {
      const auto cfg = build_config(sweep_args);
      const auto rows = risest::run_sweep(cfg);
      with_output(sweep_args.output, [&](std::ostream& os) { risest::write_results_csv(os, rows); });
      if (!sweep_args.plot_data.empty())
        with_output(sweep_args.plot_data,
                    [&](std::ostream& os) { risest::write_summary_plot(os, risest::summarize(rows)); });
    } else if (converge->parsed()) {
      const auto cfg = build_config(conv_args);
      const auto rows = risest::run_convergence(cfg);
      with_output(conv_args.output, [&](std::ostream& os) { risest::write_convergence_csv(os, rows); });
    } else if (design->parsed()) {
      const auto cfg = build_config(design_args);
      auto scheme = cfg.schemes.front();
      if (scheme.kind == risest::Scheme::ProposedGrouped && scheme.rho == 0) scheme.rho = cfg.rho;
      const auto d = risest::design_scheme(cfg, scheme, cfg.estimators.front(), cfg.snr_db.front());
      with_output(design_args.output, [&](std::ostream& os) { risest::write_design_csv(os, d); });
    } else if (validate->parsed()) {
      const auto cfg = build_config(valid_args);
      const auto rows = risest::run_validation(cfg);
      with_output(valid_args.output, [&](std::ostream& os) { risest::write_validation_csv(os, rows); });
      for (const auto& r : rows)
        if (!r.passed) return kExitNumerical;
    }
  } catch (const risest::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const risest::Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
