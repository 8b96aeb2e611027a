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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "risest/baselines.hpp"
#include "risest/channel.hpp"
#include "risest/lmmse_design.hpp"
#include "risest/ls_design.hpp"
#include "risest/phase_model.hpp"
#include "risest/rng.hpp"
#include "risest/system.hpp"
#include "risest/trace.hpp"

namespace risest {

enum class Estimator { LS, LMMSE };

std::string estimator_name(Estimator e);
Estimator parse_estimator(const std::string& text);

// Initial pattern for design runs: the projected DFT, or uniformly random phases.
enum class InitKind { Naive, Random };

struct ExperimentConfig {
  Index K = 2;
  Index M = 8;
  Index L = 4;
  Index B = 0;    // 0 selects M+1
  Index tau = 0;  // 0 selects K
  double power = 1.0;
  std::vector<double> snr_db{-5.0, 0.0, 5.0, 10.0};
  int trials = 50;
  std::uint64_t seed = 1;
  ReflectionModel model;
  CorrelationSpec corr;
  std::vector<SchemeId> schemes{SchemeId::parse("proposed"), SchemeId::parse("ideal-projection"),
                                SchemeId::parse("naive"), SchemeId::parse("onoff")};
  std::vector<Estimator> estimators{Estimator::LS};
  DesignOptions design;
  int rho = 2;  // grouping factor used by a bare "grouped" scheme
  InitKind init = InitKind::Naive;
  bool simulate = true;
  bool timing = false;

  Index subframes() const { return B > 0 ? B : M + 1; }
  Index length() const { return tau > 0 ? tau : K; }
  ChannelDims dims() const { return {K, M, L}; }

  // Throws ConfigError naming the offending field.
  void validate() const;

  // Applies one key=value setting; keys mirror the command-line flags
  // without the leading dashes (m, k, snr-db, beta-min, ...).
  void set(const std::string& key, const std::string& value);

  static ExperimentConfig profile(const std::string& name);
};

/// Reads a flat key=value file ('#' comments, blank lines ignored) on top of
/// base. Errors carry the file name and line number.
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {});
ExperimentConfig parse_config(std::istream& in, const std::string& source, ExperimentConfig base = {});

double noise_variance(double snr_db, double power);

/// Uniformly random phases on the amplitude law.
ReflectionPattern random_pattern(Index M, Index B, const ReflectionModel& model, Rng& rng);

// A deployed design: what the BS estimates and with which pilots.
struct SchemeDesign {
  SchemeId scheme;
  Estimator estimator = Estimator::LS;
  TrainingMatrix X;
  ReflectionPattern V;     // pattern used for estimation (grouped size for grouped schemes)
  CMatrix channel_map;     // full cascaded channel -> estimated channel
  CMatrix R;               // correlation of the estimated channel
  Index effective_M = 0;
  DesignTrace trace;
  double wall_ms = 0.0;
};

SchemeDesign design_scheme(const ExperimentConfig& cfg, const SchemeId& scheme, Estimator est, double snr_db);

/// Analytic MSE of a design at the given noise variance.
double analytic_mse(const SchemeDesign& d, double sigma2, Index L);

struct ResultRow {
  std::string scheme;
  std::string estimator;
  double snr_db = 0.0;
  int trial = 0;
  double analytic_nmse = 0.0;
  double empirical_nmse = 0.0;
  bool has_empirical = false;
  int iterations = 0;
  double wall_ms = 0.0;
};

/// Rows ordered by estimator, scheme, SNR, trial as listed in the config.
/// Channel and noise draws depend only on (seed, SNR index, trial), so all
/// schemes see the same realizations.
std::vector<ResultRow> run_sweep(const ExperimentConfig& cfg);

struct SummaryRow {
  std::string scheme;
  std::string estimator;
  double snr_db = 0.0;
  double analytic_nmse = 0.0;
  double empirical_nmse = 0.0;  // mean over trials
  bool has_empirical = false;
};

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows);

struct ConvergenceRow {
  std::string algorithm;  // plain or accelerated
  std::string estimator;
  int iteration = 0;
  double objective = 0.0;
  int mm_calls = 0;
  double wall_ms = 0.0;
};

/// Plain and accelerated traces of the proposed design at the first SNR.
std::vector<ConvergenceRow> run_convergence(const ExperimentConfig& cfg);

struct ValidationResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Invariant checks on one seeded instance of the configured system.
std::vector<ValidationResult> run_validation(const ExperimentConfig& cfg);

std::string format_number(double x);
void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_summary_plot(std::ostream& out, const std::vector<SummaryRow>& rows);
void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows);
void write_design_csv(std::ostream& out, const SchemeDesign& d);
void write_validation_csv(std::ostream& out, const std::vector<ValidationResult>& rows);

}  // namespace risest
