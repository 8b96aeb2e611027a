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

#include <optional>
#include <vector>

#include "risest/types.hpp"

namespace risest {

// Parallel resonant circuit of one reflecting element.
struct CircuitParams {
  double L1;     // bottom layer inductance [H]
  double L2;     // top layer inductance [H]
  double R;      // effective resistance [ohm]
  double Z0;     // free-space impedance [ohm]
  double omega;  // angular frequency [rad/s]
};

/// Phase-dependent amplitude law of a non-ideal reflecting element:
///   beta(theta) = (1 - beta_min) * ((sin(theta - delta) + 1) / 2)^alpha + beta_min
///
/// beta_min = 1 collapses the law to the ideal unit-modulus element; that is
/// how the ideal-RIS baselines share the same code path.
struct ReflectionModel {
  double beta_min = 0.2;
  double alpha = 2.0;
  double delta = 0.43 * kPi;
  std::optional<CircuitParams> circuit;

  static ReflectionModel ideal() { return {1.0, 0.0, 0.0, std::nullopt}; }

  bool is_ideal() const { return beta_min >= 1.0; }
  // Throws InvalidArgument on beta_min outside [0,1], alpha < 0, delta outside [0, 2pi).
  void validate() const;
};

double amplitude_of_phase(double theta, const ReflectionModel& model);

cplx reflection_coefficient(double theta, const ReflectionModel& model);

/// Reflection coefficient (Z - Z0)/(Z + Z0) of the circuit model at capacitance C.
/// Throws MissingCircuitParams when the model has no circuit parameters.
cplx circuit_reflection(double capacitance, const ReflectionModel& model);

/// Keeps the phase of z and replaces its modulus by the amplitude law.
/// z == 0 maps to phase 0.
cplx project_to_feasible(cplx z, const ReflectionModel& model);

bool is_feasible(cplx z, const ReflectionModel& model, double tol = 1e-9);

/// q * beta(theta)^2 + 2 Re{c * beta(theta) e^{j theta}}
struct ScalarPhaseObjective {
  double quad = 0.0;
  cplx lin{0.0, 0.0};

  double operator()(double theta, const ReflectionModel& model) const;
};

struct PhaseMinimum {
  double theta = 0.0;
  double value = 0.0;
};

/// One-dimensional phase search over [0, 2pi).
///
/// Uniform grid (default 1024 points, smallest theta wins ties) followed by
/// golden-section refinement on the two grid cells around the best point.
/// Amplitudes and trig values on the grid are tabulated once per instance, so
/// a PhaseSearch should be reused across the element-wise updates of a
/// pattern. For the ideal model the minimizer is taken in closed form.
class PhaseSearch {
 public:
  static constexpr int kDefaultGridPoints = 1024;
  static constexpr int kRefineIterations = 40;

  explicit PhaseSearch(ReflectionModel model, int grid_points = kDefaultGridPoints);

  PhaseMinimum minimize(const ScalarPhaseObjective& obj) const;

  const ReflectionModel& model() const { return model_; }
  int grid_points() const { return static_cast<int>(theta_.size()); }

 private:
  ReflectionModel model_;
  std::vector<double> theta_;
  std::vector<double> beta_cos_;
  std::vector<double> beta_sin_;
  std::vector<double> beta_sq_;
};

PhaseMinimum minimize_phase_objective(const ScalarPhaseObjective& obj,
                                      const ReflectionModel& model,
                                      int grid_points = PhaseSearch::kDefaultGridPoints);

}  // namespace risest
