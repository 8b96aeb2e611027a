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

#include "risest/system.hpp"

#include <cmath>
#include <string>

#include "risest/numerics.hpp"

namespace risest {

ReflectionPattern::ReflectionPattern(CMatrix v) : v_(std::move(v)) {
  if (v_.rows() < 2 || v_.cols() < 1) throw DimensionMismatch("ReflectionPattern: need at least 2 rows and 1 column");
  const Index last = v_.rows() - 1;
  for (Index n = 0; n < v_.cols(); ++n) {
    if (std::abs(v_(last, n) - cplx(1.0, 0.0)) > 1e-9)
      throw InvalidArgument("ReflectionPattern: direct-link row must be all ones");
    v_(last, n) = 1.0;
  }
}

bool ReflectionPattern::feasible_under(const ReflectionModel& model, double tol) const {
  for (Index n = 0; n < v_.cols(); ++n)
    for (Index m = 0; m < elements(); ++m)
      if (!is_feasible(v_(m, n), model, tol)) return false;
  return true;
}

ReflectionPattern project_pattern(const CMatrix& v, const ReflectionModel& model) {
  CMatrix out = v;
  const Index last = v.rows() - 1;
  for (Index n = 0; n < v.cols(); ++n) {
    for (Index m = 0; m < last; ++m) out(m, n) = project_to_feasible(v(m, n), model);
    out(last, n) = 1.0;
  }
  return ReflectionPattern(std::move(out));
}

TrainingMatrix::TrainingMatrix(CMatrix x, RVector power) : x_(std::move(x)), power_(std::move(power)) {
  if (power_.size() != x_.rows())
    throw DimensionMismatch("TrainingMatrix: power vector length must equal number of UEs");
  for (Index k = 0; k < x_.rows(); ++k) {
    if (!(power_(k) > 0.0)) throw InvalidArgument("TrainingMatrix: power budgets must be positive");
    if (x_.row(k).squaredNorm() > power_(k) + 1e-9)
      throw InvalidArgument("TrainingMatrix: row " + std::to_string(k) + " exceeds its power budget");
  }
}

CMatrix build_S(const CMatrix& v, const CMatrix& x) { return kron(v, x); }

CMatrix build_S(const ReflectionPattern& v, const TrainingMatrix& x) { return build_S(v.matrix(), x.matrix()); }

CMatrix simulate_reception(const CMatrix& gamma, const CMatrix& s, double sigma2, Rng& rng) {
  if (gamma.cols() != s.rows()) throw DimensionMismatch("simulate_reception: Gamma and S do not conform");
  if (!(sigma2 >= 0.0)) throw InvalidArgument("simulate_reception: sigma2 must be >= 0");
  CMatrix y = gamma * s;
  if (sigma2 > 0.0) y += rng.complex_normal_matrix(y.rows(), y.cols(), sigma2);
  return y;
}

CMatrix simulate_reception(const CMatrix& gamma, const CMatrix& s, double sigma2, std::uint64_t seed) {
  Rng rng(seed);
  return simulate_reception(gamma, s, sigma2, rng);
}

CMatrix estimate_ls(const CMatrix& y, const CMatrix& s) {
  if (y.cols() != s.cols()) throw DimensionMismatch("estimate_ls: Y and S do not conform");
  const HermitianMatrix gram(s * s.adjoint());
  // Gamma_hat^H = (S S^H)^{-1} S Y^H
  return solve_hpd(gram, s * y.adjoint()).adjoint();
}

CMatrix estimate_lmmse(const CMatrix& y, const CMatrix& s, const CMatrix& r_gamma, double sigma2, Index L) {
  if (y.cols() != s.cols() || r_gamma.rows() != s.rows())
    throw DimensionMismatch("estimate_lmmse: Y, S and R do not conform");
  if (!(sigma2 > 0.0)) throw InvalidArgument("estimate_lmmse: sigma2 must be > 0");
  const Index n = s.cols();
  const CMatrix shr = s.adjoint() * r_gamma;
  const HermitianMatrix w(shr * s + sigma2 * static_cast<double>(L) * CMatrix::Identity(n, n));
  return y * solve_hpd(w, shr);
}

double mse_ls(const CMatrix& s, double sigma2, Index L) {
  return sigma2 * static_cast<double>(L) * trace_of_inverse(HermitianMatrix(s * s.adjoint()));
}

double mse_lmmse(const CMatrix& s, const CMatrix& r_gamma, double sigma2, Index L) {
  if (r_gamma.rows() != s.rows()) throw DimensionMismatch("mse_lmmse: R and S do not conform");
  const Index n = s.cols();
  const CMatrix shr = s.adjoint() * r_gamma;
  const HermitianMatrix w(shr * s + sigma2 * static_cast<double>(L) * CMatrix::Identity(n, n));
  // Tr[R S W^{-1} S^H R] = Tr[(S^H R)^H W^{-1} (S^H R)]
  const CMatrix sol = solve_hpd(w, shr);
  const double captured = (shr.adjoint() * sol).trace().real();
  return r_gamma.trace().real() - captured;
}

double nmse(double mse, Index L, Index K, Index M) {
  return mse / static_cast<double>(L * K * (M + 1));
}

}  // namespace risest
