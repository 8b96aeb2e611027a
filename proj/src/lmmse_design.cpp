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

#include "risest/lmmse_design.hpp"

#include <cmath>
#include <limits>

#include "risest/accel.hpp"
#include "risest/numerics.hpp"

namespace risest {

namespace {

double inflated_lambda_max(const CMatrix& a) {
  return kEigenMargin * largest_eigenvalue(HermitianMatrix(a)).value;
}

// Tr[R S W^{-1} S^H R] with W = S^H R S + sigma2 L I.
double captured_energy(const CMatrix& s, const CMatrix& r, double sigma2, Index L) {
  if (r.rows() != s.rows()) throw DimensionMismatch("lmmse: R and S do not conform");
  const Index n = s.cols();
  const CMatrix shr = s.adjoint() * r;
  const HermitianMatrix w(shr * s + sigma2 * static_cast<double>(L) * CMatrix::Identity(n, n));
  return (shr.adjoint() * solve_hpd(w, shr)).trace().real();
}

CMatrix expand_pattern(const CMatrix& v, Index K) { return kron(v, CMatrix::Identity(K, K)); }

CMatrix expand_training(const CMatrix& x, Index B) { return kron(CMatrix::Identity(B, B), x); }

double mse_or_inf(const CMatrix& v, const CMatrix& x, const LmmseProblem& p) {
  try {
    return mse_lmmse(build_S(v, x), p.R(), p.sigma2(), p.antennas());
  } catch (const SingularGram&) {
    return std::numeric_limits<double>::infinity();
  }
}

CMatrix mm_training_step(const CMatrix& x, const CMatrix& v, const LmmseProblem& p) {
  const LmmseSurrogateState st = build_surrogate(x, v, p);
  return update_training(st, TrainingMatrix(x, p.power()), v.cols()).X.matrix();
}

CMatrix mm_pattern_step(const CMatrix& x, const CMatrix& v, const LmmseProblem& p, const PhaseSearch& search) {
  const LmmseSurrogateState st = build_surrogate(x, v, p);
  return update_pattern(st, ReflectionPattern(v), search).matrix();
}

}  // namespace

LmmseProblem::LmmseProblem(CMatrix r_gamma, double sigma2, Index L, RVector power, Index tau)
    : r_(std::move(r_gamma)), sigma2_(sigma2), L_(L), power_(std::move(power)), tau_(tau) {
  if (r_.rows() != r_.cols()) throw DimensionMismatch("LmmseProblem: R must be square");
  if (!(sigma2_ > 0.0)) throw InvalidArgument("LmmseProblem: sigma2 must be positive");
  if (L_ < 1) throw InvalidArgument("LmmseProblem: L must be positive");
  if (power_.size() < 1 || tau_ < power_.size()) throw InvalidArgument("LmmseProblem: need 1 <= K <= tau");
  if (r_.rows() % power_.size() != 0) throw DimensionMismatch("LmmseProblem: R size must be a multiple of K");
  for (Index k = 0; k < power_.size(); ++k)
    if (!(power_(k) > 0.0)) throw InvalidArgument("LmmseProblem: power budgets must be positive");
  lambda_r_ = inflated_lambda_max(r_);
}

double lmmse_objective(const CMatrix& s, const CMatrix& r_gamma, double sigma2, Index L) {
  return -captured_energy(s, r_gamma, sigma2, L);
}

CMatrix lmmse_xi(const CMatrix& s0, const CMatrix& r_gamma, double sigma2, Index L) {
  const Index n = s0.cols();
  const CMatrix shr = s0.adjoint() * r_gamma;
  const HermitianMatrix w(shr * s0 + sigma2 * static_cast<double>(L) * CMatrix::Identity(n, n));
  return solve_hpd(w, shr);
}

double lmmse_surrogate(const CMatrix& s, const CMatrix& xi0, const CMatrix& r_gamma, double sigma2, Index L) {
  const CMatrix sx = s * xi0;
  const double quad = (sx.adjoint() * r_gamma * sx).trace().real();
  const double lin = (xi0 * r_gamma * s).trace().real();
  return quad - 2.0 * lin + sigma2 * static_cast<double>(L) * xi0.squaredNorm();
}

LmmseSurrogateState build_surrogate(const CMatrix& x0, const CMatrix& v0, const LmmseProblem& p) {
  const Index K = p.users();
  const Index B = v0.cols();
  if (x0.rows() != K || x0.cols() != p.length()) throw DimensionMismatch("build_surrogate: X has wrong shape");
  if (v0.rows() * K != p.R().rows()) throw DimensionMismatch("build_surrogate: V does not match R");

  LmmseSurrogateState st;
  const CMatrix vt = expand_pattern(v0, K);
  const CMatrix xt = expand_training(x0, B);
  st.Xi0 = lmmse_xi(vt * xt, p.R(), p.sigma2(), p.antennas());

  const CMatrix xixi = st.Xi0 * st.Xi0.adjoint();
  const CMatrix rv = p.R() * vt;
  const CMatrix vrv = vt.adjoint() * rv;
  st.lambda2 = inflated_lambda_max(xixi) * inflated_lambda_max(vrv);
  st.B0 = st.lambda2 * xt.adjoint() - xixi * xt.adjoint() * vrv + st.Xi0 * rv;

  refresh_pattern_terms(st, x0, v0, p);
  return st;
}

void refresh_pattern_terms(LmmseSurrogateState& st, const CMatrix& x, const CMatrix& v0, const LmmseProblem& p) {
  const Index B = v0.cols();
  const CMatrix xt = expand_training(x, B);
  const CMatrix vt = expand_pattern(v0, p.users());
  const CMatrix xxi = xt * st.Xi0;
  const CMatrix inner = xxi * xxi.adjoint();
  st.lambda3 = inflated_lambda_max(inner) * p.lambda_max_R();
  st.C0 = st.lambda3 * vt.adjoint() - inner * vt.adjoint() * p.R() + xxi * p.R();
}

CVector training_closed_form(const CVector& b, double lambda2_b, double power) {
  const double nb = b.norm();
  const double radius = std::sqrt(power);
  if (nb > radius * lambda2_b) return (radius / nb) * b;
  return b / lambda2_b;
}

TrainingUpdate update_training(const LmmseSurrogateState& st, const TrainingMatrix& x0, Index B) {
  const Index K = x0.users();
  const Index tau = x0.length();
  if (st.B0.rows() != tau * B || st.B0.cols() != B * K)
    throw DimensionMismatch("update_training: B0 does not match (tau, B, K)");
  CMatrix x = x0.matrix();
  std::vector<bool> zero(static_cast<std::size_t>(K), false);
  const double lb = st.lambda2 * static_cast<double>(B);
  for (Index k = 0; k < K; ++k) {
    CVector b = CVector::Zero(tau);
    for (Index blk = 0; blk < B; ++blk) b += st.B0.block(blk * tau, blk * K + k, tau, 1).conjugate();
    if (b.norm() == 0.0) {
      zero[static_cast<std::size_t>(k)] = true;
      continue;
    }
    x.row(k) = training_closed_form(b, lb, x0.power()(k)).transpose();
  }
  return {TrainingMatrix(std::move(x), x0.power()), std::move(zero)};
}

CMatrix pattern_coefficients(const CMatrix& c0, Index K, Index M1, Index B) {
  if (c0.rows() != B * K || c0.cols() != M1 * K) throw DimensionMismatch("pattern_coefficients: C0 has wrong shape");
  CMatrix c(M1, B);
  for (Index n = 0; n < B; ++n)
    for (Index m = 0; m < M1; ++m) {
      cplx acc = 0.0;
      for (Index k = 0; k < K; ++k) acc += c0(n * K + k, m * K + k);
      c(m, n) = acc;
    }
  return c;
}

ReflectionPattern update_pattern(const LmmseSurrogateState& st, const ReflectionPattern& v0,
                                 const PhaseSearch& search) {
  const Index M1 = v0.matrix().rows();
  const Index B = v0.subframes();
  const Index K = st.C0.rows() / B;
  const CMatrix c = pattern_coefficients(st.C0, K, M1, B);
  const double q = st.lambda3 * static_cast<double>(K);
  CMatrix v = v0.matrix();
  for (Index n = 0; n < B; ++n)
    for (Index m = 0; m + 1 < M1; ++m) {
      const PhaseMinimum best = search.minimize({q, -c(m, n)});
      v(m, n) = reflection_coefficient(best.theta, search.model());
    }
  return ReflectionPattern(std::move(v));
}

CMatrix project_training(const CMatrix& x, const RVector& power) {
  CMatrix out = x;
  for (Index k = 0; k < x.rows(); ++k) {
    const double n = x.row(k).norm();
    if (n > 0.0) out.row(k) *= std::sqrt(power(k)) / n;
  }
  return out;
}

LmmseDesign design_lmmse(const LmmseProblem& p, const ReflectionModel& model, const TrainingMatrix& init_x,
                         const ReflectionPattern& init_v, const DesignOptions& options) {
  const PhaseSearch search(model, options.grid_points);
  const int budget = options.iteration_budget();
  Stopwatch clock;

  CMatrix x = init_x.matrix();
  CMatrix v = init_v.matrix();
  double j = mse_lmmse(build_S(v, x), p.R(), p.sigma2(), p.antennas());
  DesignTrace trace;
  trace.entries.push_back({0, j, 0, 0.0});
  int calls = 0;

  for (int it = 1; it <= budget; ++it) {
    double jn = 0.0;
    if (options.accelerate) {
      AccelProblem xp;
      xp.mm_update = [&](const CMatrix& xx) { return mm_training_step(xx, v, p); };
      xp.project = [&](const CMatrix& xx) { return project_training(xx, p.power()); };
      xp.objective = [&](const CMatrix& xx) { return mse_or_inf(v, xx, p); };
      AccelState xs{x, j, {}};
      xs = squarem_step(xs, xp);
      x = std::move(xs.iterate);
      calls += xs.history.back().mm_calls;

      AccelProblem vp;
      vp.mm_update = [&](const CMatrix& vv) { return mm_pattern_step(x, vv, p, search); };
      vp.project = [&](const CMatrix& vv) { return project_pattern(vv, model).matrix(); };
      vp.objective = [&](const CMatrix& vv) { return mse_or_inf(vv, x, p); };
      AccelState vs{v, xs.objective, {}};
      vs = squarem_step(vs, vp);
      v = std::move(vs.iterate);
      calls += vs.history.back().mm_calls;
      jn = vs.objective;
    } else {
      LmmseSurrogateState st = build_surrogate(x, v, p);
      x = update_training(st, TrainingMatrix(x, p.power()), v.cols()).X.matrix();
      refresh_pattern_terms(st, x, v, p);
      v = update_pattern(st, ReflectionPattern(v), search).matrix();
      calls += 2;
      jn = mse_lmmse(build_S(v, x), p.R(), p.sigma2(), p.antennas());
    }
    trace.entries.push_back({it, jn, calls, clock.elapsed_ms()});
    const bool done = relative_change_below(j, jn, options.eps);
    j = jn;
    if (done) {
      trace.converged = true;
      break;
    }
  }
  return {TrainingMatrix(std::move(x), p.power()), ReflectionPattern(std::move(v)), std::move(trace)};
}

TrainingMatrix optimize_training(const LmmseProblem& p, const TrainingMatrix& init_x, const ReflectionPattern& v,
                                 const DesignOptions& options) {
  CMatrix x = init_x.matrix();
  double j = mse_lmmse(build_S(v.matrix(), x), p.R(), p.sigma2(), p.antennas());
  for (int it = 1; it <= options.iteration_budget(); ++it) {
    x = mm_training_step(x, v.matrix(), p);
    const double jn = mse_lmmse(build_S(v.matrix(), x), p.R(), p.sigma2(), p.antennas());
    const bool done = relative_change_below(j, jn, options.eps);
    j = jn;
    if (done) break;
  }
  return TrainingMatrix(std::move(x), p.power());
}

}  // namespace risest
