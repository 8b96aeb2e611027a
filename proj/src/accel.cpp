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

#include "risest/accel.hpp"

namespace risest {

AccelState squarem_step(const AccelState& state, const AccelProblem& problem) {
  const CMatrix& v0 = state.iterate;
  const CMatrix v1 = problem.mm_update(v0);
  const CMatrix v2 = problem.mm_update(v1);
  const CMatrix l1 = v1 - v0;
  const CMatrix l2 = v2 - v1 - l1;

  AccelState next;
  next.history = state.history;
  StepStats stats;
  stats.mm_calls = 2;

  const double n2 = l2.norm();
  if (n2 < kDegenerateStep) {
    stats.degenerate = true;
    stats.step_length = -1.0;
    next.iterate = v2;
    next.objective = problem.objective(v2);
    next.history.push_back(stats);
    return next;
  }

  double l = -l1.norm() / n2;
  CMatrix candidate = problem.project(v0 - 2.0 * l * l1 + l * l * l2);
  double value = problem.objective(candidate);
  // The negated comparison also rejects NaN objectives.
  while (!(value <= state.objective)) {
    if (stats.backtracks == kMaxBacktracks) {
      stats.fell_back = true;
      candidate = v2;
      value = problem.objective(v2);
      break;
    }
    l = (l - 1.0) / 2.0;
    ++stats.backtracks;
    candidate = problem.project(v0 - 2.0 * l * l1 + l * l * l2);
    value = problem.objective(candidate);
  }
  stats.step_length = l;
  next.iterate = std::move(candidate);
  next.objective = value;
  next.history.push_back(stats);
  return next;
}

AccelResult accelerate(const CMatrix& initial, const AccelProblem& problem, double eps, int max_iter) {
  Stopwatch clock;
  AccelResult out;
  out.state.iterate = initial;
  out.state.objective = problem.objective(initial);
  out.trace.entries.push_back({0, out.state.objective, 0, 0.0});
  int calls = 0;
  for (int it = 1; it <= max_iter; ++it) {
    const double previous = out.state.objective;
    out.state = squarem_step(out.state, problem);
    calls += out.state.history.back().mm_calls;
    out.trace.entries.push_back({it, out.state.objective, calls, clock.elapsed_ms()});
    if (relative_change_below(previous, out.state.objective, eps)) {
      out.trace.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace risest
