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

#include "risest/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "risest/numerics.hpp"

namespace risest {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty() || !std::isfinite(x))
    throw ConfigError(key + ": expected a number, got '" + value + "'");
  return x;
}

long long to_int(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  long long x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
    throw ConfigError(key + ": expected an integer, got '" + value + "'");
  return x;
}

bool to_bool(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "off" || v == "no") return false;
  throw ConfigError(key + ": expected a boolean, got '" + value + "'");
}

SchemeId resolve(SchemeId s, int rho) {
  if (s.kind == Scheme::ProposedGrouped && s.rho == 0) s.rho = rho;
  return s;
}

RVector power_vector(const ExperimentConfig& cfg) { return RVector::Constant(cfg.K, cfg.power); }

ReflectionPattern initial_pattern(const ExperimentConfig& cfg, Index M, Index B, const ReflectionModel& model) {
  if (cfg.init == InitKind::Random) {
    Rng rng = Rng::stream(cfg.seed, 0x1417u);
    return random_pattern(M, B, model, rng);
  }
  return naive_pattern(M, B, model);
}

// Iteration traces are noisy wall-clock measurements; keep them out of the
// output unless asked, so runs stay byte-reproducible.
double shown_ms(const ExperimentConfig& cfg, double ms) { return cfg.timing ? ms : 0.0; }

}  // namespace

std::string estimator_name(Estimator e) { return e == Estimator::LS ? "ls" : "lmmse"; }

Estimator parse_estimator(const std::string& text) {
  if (text == "ls") return Estimator::LS;
  if (text == "lmmse") return Estimator::LMMSE;
  throw ConfigError("unknown estimator '" + text + "'");
}

void ExperimentConfig::set(const std::string& raw_key, const std::string& value) {
  const std::string key = trim(raw_key);
  auto positive = [&](long long lo) {
    const long long x = to_int(key, value);
    if (x < lo) throw ConfigError(key + ": must be >= " + std::to_string(lo));
    return x;
  };
  if (key == "m") M = positive(1);
  else if (key == "k") K = positive(1);
  else if (key == "l") L = positive(1);
  else if (key == "b") B = positive(0);
  else if (key == "tau") tau = positive(0);
  else if (key == "power") power = to_double(key, value);
  else if (key == "snr-db") {
    snr_db.clear();
    for (const auto& s : split_list(value)) snr_db.push_back(to_double(key, s));
  } else if (key == "trials") trials = static_cast<int>(positive(1));
  else if (key == "seed") seed = static_cast<std::uint64_t>(positive(0));
  else if (key == "beta-min") model.beta_min = to_double(key, value);
  else if (key == "alpha") model.alpha = to_double(key, value);
  else if (key == "delta") model.delta = to_double(key, value);
  else if (key == "psi-ue") corr.psi_ue = to_double(key, value);
  else if (key == "psi-ris") corr.psi_ris = to_double(key, value);
  else if (key == "psi-bs") corr.psi_bs = to_double(key, value);
  else if (key == "scheme") {
    schemes.clear();
    for (const auto& s : split_list(value))
      schemes.push_back(s == "grouped" ? SchemeId{Scheme::ProposedGrouped, 0} : SchemeId::parse(s));
  } else if (key == "estimator") {
    estimators.clear();
    for (const auto& s : split_list(value)) {
      if (s == "both") {
        estimators = {Estimator::LS, Estimator::LMMSE};
      } else {
        estimators.push_back(parse_estimator(s));
      }
    }
  } else if (key == "accel") design.accelerate = to_bool(key, value);
  else if (key == "eps") design.eps = to_double(key, value);
  else if (key == "max-iter") design.max_iter = static_cast<int>(positive(0));
  else if (key == "grid-points") design.grid_points = static_cast<int>(positive(2));
  else if (key == "rho") rho = static_cast<int>(positive(1));
  else if (key == "init") {
    const std::string v = trim(value);
    if (v == "naive") init = InitKind::Naive;
    else if (v == "random") init = InitKind::Random;
    else throw ConfigError("init: expected naive or random, got '" + value + "'");
  } else if (key == "simulate") simulate = to_bool(key, value);
  else if (key == "timing") timing = to_bool(key, value);
  else if (key == "profile") {
    const ExperimentConfig p = profile(trim(value));
    K = p.K;
    M = p.M;
    L = p.L;
    B = p.B;
    tau = p.tau;
    trials = p.trials;
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

ExperimentConfig ExperimentConfig::profile(const std::string& name) {
  ExperimentConfig c;
  if (name == "desk") return c;
  if (name == "paper") {
    c.K = 4;
    c.M = 20;
    c.L = 16;
    return c;
  }
  throw ConfigError("unknown profile '" + name + "'");
}

void ExperimentConfig::validate() const {
  if (K < 1 || M < 1 || L < 1) throw ConfigError("k, m, l must be positive");
  if (subframes() < M + 1) throw ConfigError("b: need B >= M+1");
  if (length() < K) throw ConfigError("tau: need tau >= K");
  if (!(power > 0.0)) throw ConfigError("power: must be positive");
  if (trials < 1) throw ConfigError("trials: must be positive");
  if (snr_db.empty()) throw ConfigError("snr-db: empty list");
  if (schemes.empty()) throw ConfigError("scheme: empty list");
  if (estimators.empty()) throw ConfigError("estimator: empty list");
  if (!(design.eps > 0.0)) throw ConfigError("eps: must be positive");
  if (design.grid_points < 2) throw ConfigError("grid-points: need at least 2");
  try {
    model.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("reflection model: ") + e.what());
  }
  try {
    corr.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("correlation: ") + e.what());
  }
  for (const auto& raw : schemes) {
    const SchemeId s = resolve(raw, rho);
    if (s.kind == Scheme::OnOff && subframes() != M + 1) throw ConfigError("scheme onoff: needs B = M+1");
    if (s.kind == Scheme::ProposedGrouped && (s.rho < 1 || M % s.rho != 0))
      throw ConfigError("scheme " + s.name() + ": rho must divide M");
  }
}

ExperimentConfig parse_config(std::istream& in, const std::string& source, ExperimentConfig base) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = source + ":" + std::to_string(lineno) + ": ";
    if (eq == std::string::npos) throw ConfigError(where + "expected key=value");
    try {
      base.set(line.substr(0, eq), line.substr(eq + 1));
    } catch (const Error& e) {
      throw ConfigError(where + e.what());
    }
  }
  return base;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in, path, std::move(base));
}

double noise_variance(double snr_db, double power) { return power / std::pow(10.0, snr_db / 10.0); }

ReflectionPattern random_pattern(Index M, Index B, const ReflectionModel& model, Rng& rng) {
  CMatrix v = CMatrix::Ones(M + 1, B);
  for (Index n = 0; n < B; ++n)
    for (Index m = 0; m < M; ++m) v(m, n) = reflection_coefficient(kTwoPi * rng.uniform(), model);
  return ReflectionPattern(std::move(v));
}

SchemeDesign design_scheme(const ExperimentConfig& cfg, const SchemeId& raw, Estimator est, double snr_db) {
  const SchemeId scheme = resolve(raw, cfg.rho);
  const Index K = cfg.K;
  const Index M = cfg.M;
  const Index tau = cfg.length();
  const RVector power = power_vector(cfg);
  const double sigma2 = noise_variance(snr_db, cfg.power);
  const ChannelDims dims = cfg.dims();
  const ReflectionModel ideal = ReflectionModel::ideal();

  Index Meff = M;
  Index B = cfg.subframes();
  CMatrix map = CMatrix::Identity((M + 1) * K, (M + 1) * K);
  CMatrix R;
  if (scheme.kind == Scheme::ProposedGrouped) {
    const Grouping grouping(M, scheme.rho);
    Meff = grouping.groups();
    B = Meff + 1;
    map = grouping.channel_map(K);
    R = grouped_correlation(cfg.corr, dims, grouping);
  } else {
    R = cascaded_correlation(cfg.corr, dims);
  }

  const TrainingMatrix x0 = dft_training(K, tau, power);
  Stopwatch clock;
  TrainingMatrix X = x0;
  CMatrix V;
  DesignTrace trace;

  const bool designs = scheme.kind == Scheme::Proposed || scheme.kind == Scheme::ProposedGrouped ||
                       scheme.kind == Scheme::IdealRis || scheme.kind == Scheme::IdealRisProjection;
  if (designs) {
    const bool use_ideal = scheme.kind == Scheme::IdealRis || scheme.kind == Scheme::IdealRisProjection;
    const ReflectionModel& m = use_ideal ? ideal : cfg.model;
    const ReflectionPattern init = initial_pattern(cfg, Meff, B, m);
    if (est == Estimator::LS) {
      LsDesign d = design_ls(m, init, cfg.design);
      V = d.pattern.matrix();
      trace = std::move(d.trace);
    } else {
      const LmmseProblem problem(R, sigma2, cfg.L, power, tau);
      LmmseDesign d = design_lmmse(problem, m, x0, init, cfg.design);
      X = std::move(d.X);
      V = d.V.matrix();
      trace = std::move(d.trace);
    }
    if (scheme.kind == Scheme::IdealRisProjection) {
      V = project_pattern(V, cfg.model).matrix();
      if (est == Estimator::LMMSE) {
        const LmmseProblem problem(R, sigma2, cfg.L, power, tau);
        X = optimize_training(problem, X, ReflectionPattern(V), cfg.design);
      }
    }
  } else if (scheme.kind == Scheme::Naive) {
    V = naive_pattern(M, B, cfg.model).matrix();
  } else {
    V = onoff_pattern(M, B).matrix();
  }

  SchemeDesign out{scheme, est, std::move(X), ReflectionPattern(std::move(V)), std::move(map), std::move(R),
                   Meff, std::move(trace), 0.0};
  out.wall_ms = clock.elapsed_ms();
  return out;
}

double analytic_mse(const SchemeDesign& d, double sigma2, Index L) {
  const CMatrix s = build_S(d.V, d.X);
  return d.estimator == Estimator::LS ? mse_ls(s, sigma2, L) : mse_lmmse(s, d.R, sigma2, L);
}

std::vector<ResultRow> run_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  const ChannelSampler sampler(cfg.dims(), cfg.corr);
  const Index K = cfg.K;
  const Index L = cfg.L;
  std::vector<ResultRow> rows;

  for (const Estimator est : cfg.estimators) {
    for (const SchemeId& raw : cfg.schemes) {
      const SchemeId scheme = resolve(raw, cfg.rho);
      // LS designs do not depend on the noise level, so one design serves all SNRs.
      std::vector<SchemeDesign> designs;
      for (std::size_t i = 0; i < cfg.snr_db.size(); ++i) {
        if (est == Estimator::LS && i > 0) {
          designs.push_back(designs.front());
        } else {
          designs.push_back(design_scheme(cfg, scheme, est, cfg.snr_db[i]));
        }
      }
      for (std::size_t i = 0; i < cfg.snr_db.size(); ++i) {
        const SchemeDesign& d = designs[i];
        const double sigma2 = noise_variance(cfg.snr_db[i], cfg.power);
        const double analytic = nmse(analytic_mse(d, sigma2, L), L, K, d.effective_M);
        const CMatrix s = build_S(d.V, d.X);
        for (int t = 0; t < cfg.trials; ++t) {
          ResultRow row{scheme.name(), estimator_name(est), cfg.snr_db[i], t, analytic, 0.0, false,
                        d.trace.iterations(), shown_ms(cfg, d.wall_ms)};
          if (cfg.simulate) {
            Rng rng = Rng::stream(cfg.seed, (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint64_t>(t));
            const CMatrix gamma = cascaded_channel(sampler.sample(rng)) * d.channel_map;
            const CMatrix y = simulate_reception(gamma, s, sigma2, rng);
            const CMatrix est_gamma =
                est == Estimator::LS ? estimate_ls(y, s) : estimate_lmmse(y, s, d.R, sigma2, L);
            row.empirical_nmse = nmse((est_gamma - gamma).squaredNorm(), L, K, d.effective_M);
            row.has_empirical = true;
          }
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return rows;
}

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
  std::vector<SummaryRow> out;
  std::map<std::tuple<std::string, std::string, double>, std::size_t> index;
  std::vector<int> counts;
  for (const auto& r : rows) {
    const auto key = std::make_tuple(r.estimator, r.scheme, r.snr_db);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, out.size()).first;
      out.push_back({r.scheme, r.estimator, r.snr_db, r.analytic_nmse, 0.0, r.has_empirical});
      counts.push_back(0);
    }
    SummaryRow& s = out[it->second];
    s.empirical_nmse += r.empirical_nmse;
    ++counts[it->second];
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i].empirical_nmse /= counts[i];
  return out;
}

std::vector<ConvergenceRow> run_convergence(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<ConvergenceRow> rows;
  const double sigma2 = noise_variance(cfg.snr_db.front(), cfg.power);
  const RVector power = power_vector(cfg);
  const ReflectionPattern init = initial_pattern(cfg, cfg.M, cfg.subframes(), cfg.model);
  const TrainingMatrix x0 = dft_training(cfg.K, cfg.length(), power);
  for (const Estimator est : cfg.estimators) {
    for (const bool accel : {false, true}) {
      DesignOptions opts = cfg.design;
      opts.accelerate = accel;
      DesignTrace trace;
      if (est == Estimator::LS) {
        trace = design_ls(cfg.model, init, opts).trace;
      } else {
        const LmmseProblem problem(cascaded_correlation(cfg.corr, cfg.dims()), sigma2, cfg.L, power, cfg.length());
        trace = design_lmmse(problem, cfg.model, x0, init, opts).trace;
      }
      for (const auto& e : trace.entries)
        rows.push_back({accel ? "accelerated" : "plain", estimator_name(est), e.iteration, e.objective, e.mm_calls,
                        shown_ms(cfg, e.wall_ms)});
    }
  }
  return rows;
}

std::vector<ValidationResult> run_validation(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<ValidationResult> out;
  auto check = [&](const std::string& name, bool ok, double value) {
    out.push_back({name, ok, format_number(value)});
  };
  auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };

  Rng rng = Rng::stream(cfg.seed, 0x7a11u);
  const Index K = cfg.K, M = cfg.M, L = cfg.L, B = cfg.subframes(), tau = cfg.length();
  const RVector power = power_vector(cfg);
  const double sigma2 = noise_variance(cfg.snr_db.front(), cfg.power);
  const CMatrix R = cascaded_correlation(cfg.corr, cfg.dims());

  const ReflectionPattern v = random_pattern(M, B, cfg.model, rng);
  CMatrix xr = rng.complex_normal_matrix(K, tau);
  xr = project_training(xr, power);
  const TrainingMatrix x(xr, power);
  const CMatrix s = build_S(v, x);

  {
    const double lhs = trace_of_inverse(HermitianMatrix(s * s.adjoint()));
    const double rhs = ls_objective(v.matrix()) * trace_of_inverse(HermitianMatrix(xr * xr.adjoint()));
    check("kronecker_trace_identity", rel(lhs, rhs) < 1e-8, rel(lhs, rhs));
  }
  {
    const Index n = R.rows();
    const CMatrix rinv = R.inverse();
    const CMatrix inner = rinv + s * s.adjoint() / (sigma2 * static_cast<double>(L));
    const double direct = inner.inverse().trace().real();
    const double compact = mse_lmmse(s, R, sigma2, L);
    check("lmmse_mse_forms_agree", rel(compact, direct) < 1e-8 && n > 0, rel(compact, direct));
  }
  check("correlation_trace", rel(R.trace().real(), static_cast<double>(L * K * (M + 1))) < 1e-12,
        R.trace().real());
  {
    const LsSurrogate sur = ls_surrogate(v.matrix());
    const double f0 = ls_objective(v.matrix());
    check("ls_surrogate_tangent", rel(sur.evaluate(v.matrix()), f0) < 1e-8, rel(sur.evaluate(v.matrix()), f0));
  }
  {
    const CMatrix xi0 = lmmse_xi(s, R, sigma2, L);
    const double g0 = lmmse_objective(s, R, sigma2, L);
    const double sur = lmmse_surrogate(s, xi0, R, sigma2, L);
    check("lmmse_surrogate_tangent", std::abs(sur - g0) <= 1e-8 * std::abs(g0), std::abs(sur - g0));
  }
  {
    const double dense = Eigen::SelfAdjointEigenSolver<CMatrix>(R).eigenvalues().maxCoeff();
    const double power_it = largest_eigenvalue(HermitianMatrix(R)).value;
    check("power_iteration", rel(power_it, dense) < 1e-6, rel(power_it, dense));
  }

  const ReflectionPattern init = random_pattern(M, B, cfg.model, rng);
  auto monotone = [](const DesignTrace& t) {
    for (std::size_t i = 1; i < t.entries.size(); ++i)
      if (t.entries[i].objective > t.entries[i - 1].objective * (1.0 + 1e-12)) return false;
    return true;
  };
  const LsDesign ls = design_ls(cfg.model, init, cfg.design);
  check("ls_trace_monotone", monotone(ls.trace), ls.trace.final_objective());
  check("ls_converged", ls.trace.converged, ls.trace.iterations());
  check("ls_pattern_feasible", ls.pattern.feasible_under(cfg.model), 0.0);

  const LmmseProblem problem(R, sigma2, L, power, tau);
  const LmmseDesign lm = design_lmmse(problem, cfg.model, dft_training(K, tau, power), init, cfg.design);
  check("lmmse_trace_monotone", monotone(lm.trace), lm.trace.final_objective());
  check("lmmse_converged", lm.trace.converged, lm.trace.iterations());
  check("lmmse_pattern_feasible", lm.V.feasible_under(cfg.model), 0.0);
  double worst = 0.0;
  for (Index k = 0; k < K; ++k) worst = std::max(worst, lm.X.matrix().row(k).squaredNorm() - power(k));
  check("training_power_feasible", worst <= 1e-9, worst);
  const CMatrix s_star = build_S(lm.V, lm.X);
  const double j_lmmse = mse_lmmse(s_star, R, sigma2, L);
  const double j_ls = mse_ls(s_star, sigma2, L);
  check("lmmse_below_ls", j_lmmse <= j_ls, j_ls - j_lmmse);
  return out;
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "scheme,estimator,snr_db,trial,analytic_nmse,empirical_nmse,iterations,wall_ms\n";
  for (const auto& r : rows)
    out << r.scheme << ',' << r.estimator << ',' << format_number(r.snr_db) << ',' << r.trial << ','
        << format_number(r.analytic_nmse) << ',' << (r.has_empirical ? format_number(r.empirical_nmse) : "") << ','
        << r.iterations << ',' << format_number(r.wall_ms) << '\n';
}

void write_summary_plot(std::ostream& out, const std::vector<SummaryRow>& rows) {
  std::string current;
  for (const auto& r : rows) {
    const std::string block = r.estimator + " " + r.scheme;
    if (block != current) {
      if (!current.empty()) out << "\n\n";
      out << "# " << block << "\n# snr_db analytic_nmse empirical_nmse\n";
      current = block;
    }
    out << format_number(r.snr_db) << ' ' << format_number(r.analytic_nmse) << ' '
        << (r.has_empirical ? format_number(r.empirical_nmse) : "nan") << '\n';
  }
}

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows) {
  out << "algorithm,estimator,iteration,objective,mm_calls,wall_ms\n";
  for (const auto& r : rows)
    out << r.algorithm << ',' << r.estimator << ',' << r.iteration << ',' << format_number(r.objective) << ','
        << r.mm_calls << ',' << format_number(r.wall_ms) << '\n';
}

void write_design_csv(std::ostream& out, const SchemeDesign& d) {
  out << "matrix,row,col,re,im\n";
  auto dump = [&](const char* name, const CMatrix& a) {
    for (Index i = 0; i < a.rows(); ++i)
      for (Index j = 0; j < a.cols(); ++j)
        out << name << ',' << i << ',' << j << ',' << format_number(a(i, j).real()) << ','
            << format_number(a(i, j).imag()) << '\n';
  };
  dump("X", d.X.matrix());
  dump("V", d.V.matrix());
}

void write_validation_csv(std::ostream& out, const std::vector<ValidationResult>& rows) {
  out << "check,passed,value\n";
  for (const auto& r : rows) out << r.name << ',' << (r.passed ? 1 : 0) << ',' << r.detail << '\n';
}

}  // namespace risest
