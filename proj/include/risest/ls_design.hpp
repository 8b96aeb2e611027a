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

#include "risest/phase_model.hpp"
#include "risest/system.hpp"
#include "risest/trace.hpp"

namespace risest {

/// x_k = sqrt(P_k) d_k / ||d_k||, d_k the k-th column of the tau-point DFT
/// matrix, so X X^H = diag(P). Throws InvalidArgument if tau < K.
TrainingMatrix dft_training(Index K, Index tau, const RVector& power);

/// Tr[(V V^H)^{-1}], the pattern-dependent factor of the LS error when the
/// training is orthogonal. Throws SingularGram.
double ls_objective(const CMatrix& v);

/// Quadratic majorizer of Tr[(V V^H)^{-1}] around V0:
///   f(V; V0) = lambda1 Tr[V V^H] + 2 Re Tr[A0 V] + constant
/// with lambda1 = 3 Tr[(V0 V0^H)^{-1}]^2 and
///      A0      = -V0^H (V0 V0^H)^{-2} - lambda1 V0^H.
struct LsSurrogate {
  double lambda1 = 0.0;
  CMatrix A0;  // B x (M+1)
  double constant = 0.0;

  double evaluate(const CMatrix& v) const;
};

LsSurrogate ls_surrogate(const CMatrix& v0);

/// One MM step: every RIS entry (m, n) minimizes
///   lambda1 beta^2 + 2 Re{[A0]_{n,m} beta e^{j theta}}
/// over the amplitude law. The direct row stays at one.
ReflectionPattern mm_update_ls(const ReflectionPattern& v0, const PhaseSearch& search);

struct LsDesign {
  ReflectionPattern pattern;
  DesignTrace trace;
};

/// MM design of the reflection pattern for the LS estimator, optionally
/// wrapped in SQUAREM. The trace records Tr[(V V^H)^{-1}] per iteration.
LsDesign design_ls(const ReflectionModel& model, const ReflectionPattern& init, const DesignOptions& options);

}  // namespace risest
