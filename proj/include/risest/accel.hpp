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

#include <functional>
#include <vector>

#include "risest/trace.hpp"
#include "risest/types.hpp"

namespace risest {

// The three callbacks SQUAREM needs. mm_update must be monotone for objective;
// project must be idempotent and map onto the feasible set.
struct AccelProblem {
  std::function<CMatrix(const CMatrix&)> mm_update;
  std::function<CMatrix(const CMatrix&)> project;
  std::function<double(const CMatrix&)> objective;
};

struct StepStats {
  double step_length = 0.0;  // final l after back-tracking
  int backtracks = 0;
  int mm_calls = 0;
  bool degenerate = false;   // ||L2|| below threshold, returned V2
  bool fell_back = false;    // back-track cap hit, returned V2
};

struct AccelState {
  CMatrix iterate;
  double objective = 0.0;
  std::vector<StepStats> history;
};

inline constexpr int kMaxBacktracks = 50;
inline constexpr double kDegenerateStep = 1e-14;

/// One SQUAREM step with Cauchy-Barzilai-Borwein step length.
///
///   V1 = MM(V0), V2 = MM(V1), L1 = V1 - V0, L2 = V2 - V1 - L1,
///   l = -||L1|| / ||L2||,  candidate = P(V0 - 2 l L1 + l^2 L2)
///
/// While the candidate's objective exceeds that of V0, l <- (l - 1) / 2.
/// After kMaxBacktracks halvings the step returns V2, which is monotone by
/// construction of the MM update.
AccelState squarem_step(const AccelState& state, const AccelProblem& problem);

struct AccelResult {
  AccelState state;
  DesignTrace trace;
};

/// Repeats squarem_step until the relative objective change drops below eps
/// or max_iter steps have run (trace.converged == false in that case).
AccelResult accelerate(const CMatrix& initial, const AccelProblem& problem, double eps, int max_iter);

}  // namespace risest
