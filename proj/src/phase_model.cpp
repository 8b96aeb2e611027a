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

#include "risest/phase_model.hpp"

#include <cmath>
#include <string>

namespace risest {

void ReflectionModel::validate() const {
  if (!(beta_min >= 0.0 && beta_min <= 1.0))
    throw InvalidArgument("beta_min must lie in [0, 1], got " + std::to_string(beta_min));
  if (!(alpha >= 0.0)) throw InvalidArgument("alpha must be >= 0, got " + std::to_string(alpha));
  if (!(delta >= 0.0 && delta < kTwoPi))
    throw InvalidArgument("delta must lie in [0, 2pi), got " + std::to_string(delta));
  if (circuit) {
    const auto& c = *circuit;
    if (!(c.L1 > 0.0 && c.L2 > 0.0 && c.R >= 0.0 && c.Z0 > 0.0 && c.omega > 0.0))
      throw InvalidArgument("circuit parameters must be positive");
  }
}

double amplitude_of_phase(double theta, const ReflectionModel& model) {
  const double s = (std::sin(theta - model.delta) + 1.0) / 2.0;
  return (1.0 - model.beta_min) * std::pow(s, model.alpha) + model.beta_min;
}

cplx reflection_coefficient(double theta, const ReflectionModel& model) {
  return std::polar(amplitude_of_phase(theta, model), theta);
}

cplx circuit_reflection(double capacitance, const ReflectionModel& model) {
  if (!model.circuit) throw MissingCircuitParams("circuit_reflection: model has no circuit parameters");
  if (!(capacitance > 0.0)) throw InvalidArgument("circuit_reflection: capacitance must be positive");
  const auto& p = *model.circuit;
  const cplx jw(0.0, p.omega);
  const cplx branch = jw * p.L2 + 1.0 / (jw * capacitance) + p.R;
  const cplx z = jw * p.L1 * branch / (jw * p.L1 + branch);
  return (z - p.Z0) / (z + p.Z0);
}

cplx project_to_feasible(cplx z, const ReflectionModel& model) {
  const double theta = (z == cplx(0.0, 0.0)) ? 0.0 : std::arg(z);
  return reflection_coefficient(theta, model);
}

bool is_feasible(cplx z, const ReflectionModel& model, double tol) {
  return std::abs(project_to_feasible(z, model) - z) <= tol;
}

double ScalarPhaseObjective::operator()(double theta, const ReflectionModel& model) const {
  const double beta = amplitude_of_phase(theta, model);
  return quad * beta * beta + 2.0 * beta * (lin.real() * std::cos(theta) - lin.imag() * std::sin(theta));
}

PhaseSearch::PhaseSearch(ReflectionModel model, int grid_points) : model_(std::move(model)) {
  model_.validate();
  if (grid_points < 2) throw InvalidArgument("PhaseSearch: grid_points must be >= 2");
  const auto n = static_cast<std::size_t>(grid_points);
  theta_.resize(n);
  beta_cos_.resize(n);
  beta_sin_.resize(n);
  beta_sq_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
    const double b = amplitude_of_phase(t, model_);
    theta_[i] = t;
    beta_cos_[i] = b * std::cos(t);
    beta_sin_[i] = b * std::sin(t);
    beta_sq_[i] = b * b;
  }
}

PhaseMinimum PhaseSearch::minimize(const ScalarPhaseObjective& obj) const {
  if (model_.is_ideal()) {
    // beta == 1: minimize q + 2|c| cos(arg c + theta)  =>  theta = pi - arg c.
    const double mag = std::abs(obj.lin);
    const double theta = mag == 0.0 ? 0.0 : wrap_phase(kPi - std::arg(obj.lin));
    return {theta, obj.quad - 2.0 * mag};
  }

  const double cr = 2.0 * obj.lin.real();
  const double ci = 2.0 * obj.lin.imag();
  const std::size_t n = theta_.size();
  std::size_t best = 0;
  double best_val = obj.quad * beta_sq_[0] + cr * beta_cos_[0] - ci * beta_sin_[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double v = obj.quad * beta_sq_[i] + cr * beta_cos_[i] - ci * beta_sin_[i];
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }

  // Golden-section search on [theta_{best-1}, theta_{best+1}]; the bracket may
  // straddle 0, which is harmless since the objective is 2pi-periodic.
  const double h = kTwoPi / static_cast<double>(n);
  double a = theta_[best] - h;
  double b = theta_[best] + h;
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = obj(x1, model_);
  double f2 = obj(x2, model_);
  for (int it = 0; it < kRefineIterations; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = obj(x1, model_);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = obj(x2, model_);
    }
  }
  const double refined = f1 <= f2 ? x1 : x2;
  const double refined_theta = wrap_phase(refined);
  const double refined_val = obj(refined_theta, model_);
  if (refined_val < best_val) return {refined_theta, refined_val};
  return {theta_[best], best_val};
}

PhaseMinimum minimize_phase_objective(const ScalarPhaseObjective& obj, const ReflectionModel& model,
                                      int grid_points) {
  return PhaseSearch(model, grid_points).minimize(obj);
}

}  // namespace risest
