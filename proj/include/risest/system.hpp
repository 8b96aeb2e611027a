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

#include "risest/phase_model.hpp"
#include "risest/rng.hpp"
#include "risest/types.hpp"

namespace risest {

/// RIS reflection pattern V, size (M+1) x B. Column b holds the coefficients
/// of subframe b; the last row is the direct link and is all ones.
class ReflectionPattern {
 public:
  explicit ReflectionPattern(CMatrix v);

  const CMatrix& matrix() const { return v_; }
  Index elements() const { return v_.rows() - 1; }
  Index subframes() const { return v_.cols(); }

  // Every RIS entry is a fixed point of project_to_feasible within tol.
  bool feasible_under(const ReflectionModel& model, double tol = 1e-9) const;

 private:
  CMatrix v_;
};

/// Entry-wise projection of the RIS rows onto the amplitude law; the direct
/// row is reset to ones.
ReflectionPattern project_pattern(const CMatrix& v, const ReflectionModel& model);

/// Stacked training symbols X (K x tau), row k sent by UE k, with per-UE
/// power budgets. Construction enforces ||row k||^2 <= P_k + 1e-9.
class TrainingMatrix {
 public:
  TrainingMatrix(CMatrix x, RVector power);

  const CMatrix& matrix() const { return x_; }
  const RVector& power() const { return power_; }
  Index users() const { return x_.rows(); }
  Index length() const { return x_.cols(); }

 private:
  CMatrix x_;
  RVector power_;
};

/// S = (V (x) I_K)(I_B (x) X) = V (x) X, size (M+1)K x tau*B.
CMatrix build_S(const ReflectionPattern& v, const TrainingMatrix& x);
CMatrix build_S(const CMatrix& v, const CMatrix& x);

/// Y = Gamma S + Z with Z i.i.d. CN(0, sigma2).
CMatrix simulate_reception(const CMatrix& gamma, const CMatrix& s, double sigma2, Rng& rng);
CMatrix simulate_reception(const CMatrix& gamma, const CMatrix& s, double sigma2, std::uint64_t seed);

/// Y S^H (S S^H)^{-1}. Throws SingularGram when S S^H is ill conditioned.
CMatrix estimate_ls(const CMatrix& y, const CMatrix& s);

/// Y (S^H R S + sigma2 L I)^{-1} S^H R.
CMatrix estimate_lmmse(const CMatrix& y, const CMatrix& s, const CMatrix& r_gamma, double sigma2, Index L);

/// sigma2 L Tr[(S S^H)^{-1}].
double mse_ls(const CMatrix& s, double sigma2, Index L);

/// Tr[R - R S (S^H R S + sigma2 L I)^{-1} S^H R]; needs no inverse of R and
/// equals Tr[(R^{-1} + S S^H / (sigma2 L))^{-1}] when R is invertible.
double mse_lmmse(const CMatrix& s, const CMatrix& r_gamma, double sigma2, Index L);

/// MSE normalized by the channel dimension L K (M+1).
double nmse(double mse, Index L, Index K, Index M);

}  // namespace risest
