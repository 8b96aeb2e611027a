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

#include <vector>

#include "risest/phase_model.hpp"
#include "risest/system.hpp"
#include "risest/trace.hpp"

namespace risest {

// Safety factor on power-iteration eigenvalues so the quadratic bounds still
// majorize when the estimate falls slightly short of lambda_max.
inline constexpr double kEigenMargin = 1.0001;

/// Everything the LMMSE design needs besides the iterates.
class LmmseProblem {
 public:
  LmmseProblem(CMatrix r_gamma, double sigma2, Index L, RVector power, Index tau);

  const CMatrix& R() const { return r_; }
  double sigma2() const { return sigma2_; }
  Index antennas() const { return L_; }
  Index users() const { return power_.size(); }
  Index length() const { return tau_; }
  const RVector& power() const { return power_; }
  double noise_load() const { return sigma2_ * static_cast<double>(L_); }
  // kEigenMargin * lambda_max(R), computed once.
  double lambda_max_R() const { return lambda_r_; }

 private:
  CMatrix r_;
  double sigma2_;
  Index L_;
  RVector power_;
  Index tau_;
  double lambda_r_;
};

/// g(S) = -Tr[R S (S^H R S + sigma2 L I)^{-1} S^H R], so J_LMMSE = Tr[R] + g(S).
double lmmse_objective(const CMatrix& s, const CMatrix& r_gamma, double sigma2, Index L);

/// Xi0 = (S0^H R S0 + sigma2 L I)^{-1} S0^H R, size tau*B x (M+1)K.
CMatrix lmmse_xi(const CMatrix& s0, const CMatrix& r_gamma, double sigma2, Index L);

/// Linearized upper bound of g around S0, expressed through Xi0:
///   Tr[Xi0^H S^H R S Xi0] - 2 Re Tr[Xi0 R S] + sigma2 L Tr[Xi0 Xi0^H]
double lmmse_surrogate(const CMatrix& s, const CMatrix& xi0, const CMatrix& r_gamma, double sigma2, Index L);

struct LmmseSurrogateState {
  CMatrix Xi0;           // tau*B x (M+1)K
  double lambda2 = 0.0;  // bound for the training block
  double lambda3 = 0.0;  // bound for the pattern block
  CMatrix B0;            // tau*B x B*K
  CMatrix C0;            // B*K x (M+1)K
};

/// Expands Xi0 around S0 = V0 (x) X0 and builds both block bounds from (X0, V0).
LmmseSurrogateState build_surrogate(const CMatrix& x0, const CMatrix& v0, const LmmseProblem& problem);

/// Recomputes lambda3 and C0 with a new training matrix, keeping Xi0.
void refresh_pattern_terms(LmmseSurrogateState& state, const CMatrix& x, const CMatrix& v0,
                           const LmmseProblem& problem);

/// Per-UE minimizer of lambda2 B ||x||^2 - 2 Re{b^H x} subject to ||x||^2 <= P.
CVector training_closed_form(const CVector& b, double lambda2_b, double power);

struct TrainingUpdate {
  TrainingMatrix X;
  std::vector<bool> zero_gradient;  // b_k vanished, previous x_k kept
};

/// Closed-form X-step from B0. x0 supplies the rows kept on zero gradient.
TrainingUpdate update_training(const LmmseSurrogateState& state, const TrainingMatrix& x0, Index B);

/// Element-wise V-step from C0: q = lambda3 K, c = -c_{m,n}.
ReflectionPattern update_pattern(const LmmseSurrogateState& state, const ReflectionPattern& v0,
                                 const PhaseSearch& search);

/// c_{m,n} = sum_k [C0]_{nK+k, mK+k}, size (M+1) x B.
CMatrix pattern_coefficients(const CMatrix& c0, Index K, Index M1, Index B);

/// Rows rescaled to ||x_k|| = sqrt(P_k); zero rows are left alone.
CMatrix project_training(const CMatrix& x, const RVector& power);

struct LmmseDesign {
  TrainingMatrix X;
  ReflectionPattern V;
  DesignTrace trace;  // objective column holds J_LMMSE
};

/// Alternating MM over (X, V). With options.accelerate each block step is a
/// SQUAREM step whose MM map rebuilds the surrogate from the current point.
LmmseDesign design_lmmse(const LmmseProblem& problem, const ReflectionModel& model, const TrainingMatrix& init_x,
                         const ReflectionPattern& init_v, const DesignOptions& options);

/// Runs MM training steps with V held fixed until the relative MSE change
/// drops below eps.
TrainingMatrix optimize_training(const LmmseProblem& problem, const TrainingMatrix& init_x,
                                 const ReflectionPattern& v, const DesignOptions& options);

}  // namespace risest
