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

#include <map>
#include <string>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "risest/experiment.hpp"

namespace py = pybind11;
using namespace risest;

namespace {

ReflectionModel make_model(double beta_min, double alpha, double delta) {
  ReflectionModel m{beta_min, alpha, delta, std::nullopt};
  m.validate();
  return m;
}

// Settings use the same keys as the command line and config files.
ExperimentConfig make_config(const std::map<std::string, py::object>& settings) {
  ExperimentConfig cfg;
  if (auto it = settings.find("profile"); it != settings.end())
    cfg = ExperimentConfig::profile(py::str(it->second));
  for (const auto& [key, value] : settings) {
    if (key == "profile") continue;
    std::string text;
    if (py::isinstance<py::bool_>(value))
      text = value.cast<bool>() ? "true" : "false";
    else if (py::isinstance<py::list>(value) || py::isinstance<py::tuple>(value)) {
      for (const auto& item : value) text += (text.empty() ? "" : ",") + std::string(py::str(item));
    } else
      text = py::str(value);
    cfg.set(key, text);
  }
  cfg.validate();
  return cfg;
}

py::dict trace_dict(const DesignTrace& t) {
  std::vector<double> obj;
  std::vector<int> calls;
  for (const auto& e : t.entries) {
    obj.push_back(e.objective);
    calls.push_back(e.mm_calls);
  }
  py::dict d;
  d["objective"] = obj;
  d["mm_calls"] = calls;
  d["converged"] = t.converged;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Training and reflection design for RIS-assisted channel estimation";

  // Translators are tried newest first, so the base class goes in first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<SingularGram>(m, "SingularGram", PyExc_ArithmeticError);

  const double kDelta = 0.43 * kPi;

  m.def(
      "amplitude_of_phase",
      [](double theta, double beta_min, double alpha, double delta) {
        return amplitude_of_phase(theta, make_model(beta_min, alpha, delta));
      },
      py::arg("theta"), py::arg("beta_min") = 0.2, py::arg("alpha") = 2.0, py::arg("delta") = kDelta);
  m.def(
      "reflection_coefficient",
      [](double theta, double beta_min, double alpha, double delta) {
        return reflection_coefficient(theta, make_model(beta_min, alpha, delta));
      },
      py::arg("theta"), py::arg("beta_min") = 0.2, py::arg("alpha") = 2.0, py::arg("delta") = kDelta);

  m.def(
      "dft_training", [](Index K, Index tau, const RVector& power) { return dft_training(K, tau, power).matrix(); },
      py::arg("K"), py::arg("tau"), py::arg("power"));
  m.def(
      "naive_pattern",
      [](Index M, Index B, double beta_min, double alpha, double delta) {
        return naive_pattern(M, B, make_model(beta_min, alpha, delta)).matrix();
      },
      py::arg("M"), py::arg("B"), py::arg("beta_min") = 0.2, py::arg("alpha") = 2.0, py::arg("delta") = kDelta);
  m.def(
      "onoff_pattern", [](Index M, Index B) { return onoff_pattern(M, B).matrix(); }, py::arg("M"), py::arg("B"));
  m.def(
      "build_S", [](const CMatrix& v, const CMatrix& x) { return build_S(v, x); }, py::arg("V"), py::arg("X"));
  m.def("ls_objective", &ls_objective, py::arg("V"));
  m.def("mse_ls", &mse_ls, py::arg("S"), py::arg("sigma2"), py::arg("L"));
  m.def("mse_lmmse", &mse_lmmse, py::arg("S"), py::arg("R"), py::arg("sigma2"), py::arg("L"));
  m.def("noise_variance", &noise_variance, py::arg("snr_db"), py::arg("power") = 1.0);
  m.def(
      "cascaded_correlation",
      [](Index K, Index M, Index L, double psi_ue, double psi_ris, double psi_bs) {
        CorrelationSpec c{psi_ue, psi_ris, psi_bs};
        c.validate();
        return cascaded_correlation(c, {K, M, L});
      },
      py::arg("K"), py::arg("M"), py::arg("L"), py::arg("psi_ue") = 0.2, py::arg("psi_ris") = 0.4,
      py::arg("psi_bs") = 0.6);

  m.def(
      "design_ls",
      [](const CMatrix& init, double beta_min, double alpha, double delta, bool accelerate, double eps,
         int max_iter) {
        DesignOptions opts;
        opts.accelerate = accelerate;
        opts.eps = eps;
        opts.max_iter = max_iter;
        const ReflectionModel model = make_model(beta_min, alpha, delta);
        const LsDesign d = design_ls(model, project_pattern(init, model), opts);
        return py::make_tuple(d.pattern.matrix(), trace_dict(d.trace));
      },
      py::arg("init"), py::arg("beta_min") = 0.2, py::arg("alpha") = 2.0, py::arg("delta") = kDelta,
      py::arg("accelerate") = false, py::arg("eps") = 1e-3, py::arg("max_iter") = 0);

  m.def(
      "design",
      [](const std::string& scheme, const std::string& estimator, double snr_db,
         const std::map<std::string, py::object>& settings) {
        const ExperimentConfig cfg = make_config(settings);
        const SchemeDesign d = design_scheme(cfg, SchemeId::parse(scheme), parse_estimator(estimator), snr_db);
        py::dict out;
        out["X"] = d.X.matrix();
        out["V"] = d.V.matrix();
        out["R"] = d.R;
        out["mse"] = analytic_mse(d, noise_variance(snr_db, cfg.power), cfg.L);
        out["trace"] = trace_dict(d.trace);
        return out;
      },
      py::arg("scheme") = "proposed", py::arg("estimator") = "ls", py::arg("snr_db") = 0.0,
      py::arg("settings") = std::map<std::string, py::object>{});

  m.def(
      "run_sweep",
      [](const std::map<std::string, py::object>& settings) {
        py::list out;
        for (const ResultRow& r : run_sweep(make_config(settings))) {
          py::dict d;
          d["scheme"] = r.scheme;
          d["estimator"] = r.estimator;
          d["snr_db"] = r.snr_db;
          d["trial"] = r.trial;
          d["analytic_nmse"] = r.analytic_nmse;
          d["empirical_nmse"] = r.has_empirical ? py::cast(r.empirical_nmse) : py::none();
          d["iterations"] = r.iterations;
          out.append(d);
        }
        return out;
      },
      py::arg("settings") = std::map<std::string, py::object>{});

  m.def(
      "run_validation",
      [](const std::map<std::string, py::object>& settings) {
        py::dict out;
        for (const ValidationResult& r : run_validation(make_config(settings))) out[py::str(r.name)] = r.passed;
        return out;
      },
      py::arg("settings") = std::map<std::string, py::object>{});
}
