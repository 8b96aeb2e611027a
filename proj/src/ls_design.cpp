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

#include "risest/ls_design.hpp"

#include <cmath>
#include <limits>

#include "risest/accel.hpp"
#include "risest/numerics.hpp"

namespace risest {

TrainingMatrix dft_training(Index K, Index tau, const RVector& power) {
  if (K < 1 || tau < K) throw InvalidArgument("dft_training: need 1 <= K <= tau");
  if (power.size() != K) throw DimensionMismatch("dft_training: power vector length must equal K");
  CMatrix x(K, tau);
  const double norm = std::sqrt(static_cast<double>(tau));
  for (Index k = 0; k < K; ++k) {
    const double scale = std::sqrt(power(k)) / norm;
    for (Index t = 0; t < tau; ++t) {
      // Reduce k*t mod tau first so the phase stays exact for large indices.
      const double phase = -kTwoPi * static_cast<double>((k * t) % tau) / static_cast<double>(tau);
      x(k, t) = std::polar(scale, phase);
    }
  }
  return TrainingMatrix(std::move(x), power);
}

double ls_objective(const CMatrix& v) { return trace_of_inverse(HermitianMatrix(v * v.adjoint())); }

double LsSurrogate::evaluate(const CMatrix& v) const {
  return lambda1 * v.squaredNorm() + 2.0 * (A0 * v).trace().real() + constant;
}

LsSurrogate ls_surrogate(const CMatrix& v0) {
  const Index n = v0.rows();
  const HermitianMatrix gram(v0 * v0.adjoint());
  const CMatrix ginv = solve_hpd(gram, CMatrix::Identity(n, n));
  const CMatrix ginv2 = ginv * ginv;
  const double t0 = ginv.trace().real();

  LsSurrogate s;
  s.lambda1 = 3.0 * t0 * t0;
  const CMatrix vh_ginv2 = v0.adjoint() * ginv2;
  s.A0 = -vh_ginv2 - s.lambda1 * v0.adjoint();
  s.constant = t0 + s.lambda1 * gram.matrix().trace().real() + 2.0 * (vh_ginv2 * v0).trace().real();
  return s;
}

ReflectionPattern mm_update_ls(const ReflectionPattern& v0, const PhaseSearch& search) {
  const LsSurrogate sur = ls_surrogate(v0.matrix());
  const Index M = v0.elements();
  const Index B = v0.subframes();
  CMatrix v = v0.matrix();
  for (Index n = 0; n < B; ++n) {
    for (Index m = 0; m < M; ++m) {
      const PhaseMinimum best = search.minimize({sur.lambda1, sur.A0(n, m)});
      v(m, n) = reflection_coefficient(best.theta, search.model());
    }
  }
  return ReflectionPattern(std::move(v));
}

namespace {

double objective_or_inf(const CMatrix& v) {
  try {
    return ls_objective(v);
  } catch (const SingularGram&) {
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace

LsDesign design_ls(const ReflectionModel& model, const ReflectionPattern& init, const DesignOptions& options) {
  const PhaseSearch search(model, options.grid_points);
  const int budget = options.iteration_budget();

  if (options.accelerate) {
    AccelProblem problem;
    problem.mm_update = [&](const CMatrix& v) { return mm_update_ls(ReflectionPattern(v), search).matrix(); };
    problem.project = [&](const CMatrix& v) { return project_pattern(v, model).matrix(); };
    problem.objective = objective_or_inf;
    AccelResult res = accelerate(init.matrix(), problem, options.eps, budget);
    return {ReflectionPattern(std::move(res.state.iterate)), std::move(res.trace)};
  }

  Stopwatch clock;
  DesignTrace trace;
  ReflectionPattern v = init;
  double j = ls_objective(v.matrix());
  trace.entries.push_back({0, j, 0, 0.0});
  for (int it = 1; it <= budget; ++it) {
    ReflectionPattern next = mm_update_ls(v, search);
    const double jn = ls_objective(next.matrix());
    v = std::move(next);
    trace.entries.push_back({it, jn, it, clock.elapsed_ms()});
    const bool done = relative_change_below(j, jn, options.eps);
    j = jn;
    if (done) {
      trace.converged = true;
      break;
    }
  }
  return {std::move(v), std::move(trace)};
}

}  // namespace risest
