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

#include "risest/numerics.hpp"

#include <cmath>
#include <limits>

namespace risest {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double wrap_phase(double theta) {
  double w = std::fmod(theta, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

HermitianMatrix::HermitianMatrix(const CMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("HermitianMatrix: matrix is not square");
  const double scale = a.norm();
  const double asym = (a - a.adjoint()).norm();
  if (scale > 0.0 && asym / scale >= 1e-10)
    throw InvalidArgument("HermitianMatrix: matrix is not Hermitian");
  a_ = 0.5 * (a + a.adjoint());
}

namespace {

CVector start_vector(Index n) {
  CVector x(n);
  for (Index i = 0; i < n; ++i) {
    const double t = 2.399963229728653 * static_cast<double>(i + 1);
    x(i) = cplx(1.0 + 0.1 * std::cos(t), 0.1 * std::sin(t));
  }
  return x.normalized();
}

// Cholesky with a condition check. Eigen's rcond() estimates the 1-norm
// reciprocal condition number, which is within a factor n of the 2-norm one.
Eigen::LLT<CMatrix> factor_hpd(const HermitianMatrix& a) {
  Eigen::LLT<CMatrix> llt(a.matrix());
  if (llt.info() != Eigen::Success) throw SingularGram("matrix is not positive definite");
  const double rcond = llt.rcond();
  if (!(rcond > 1.0 / kMaxCondition)) throw SingularGram("matrix condition number exceeds 1e12");
  return llt;
}

}  // namespace

EigenEstimate largest_eigenvalue(const HermitianMatrix& a, double tol, int max_iter) {
  const CMatrix& m = a.matrix();
  EigenEstimate est;
  if (m.size() == 0) {
    est.converged = true;
    return est;
  }
  CVector x = start_vector(m.rows());
  double rq = (x.adjoint() * m * x)(0).real();
  for (int it = 1; it <= max_iter; ++it) {
    CVector y = m * x;
    const double ny = y.norm();
    if (ny == 0.0) {
      // x lies in the null space; for PSD input this means A == 0 along x.
      est.value = 0.0;
      est.iterations = it;
      est.converged = m.norm() == 0.0;
      if (!est.converged) {
        // Restart from a basis vector with the largest diagonal entry.
        Index k = 0;
        m.diagonal().real().maxCoeff(&k);
        x.setZero();
        x(k) = 1.0;
        continue;
      }
      return est;
    }
    x = y / ny;
    const double next = (x.adjoint() * m * x)(0).real();
    const bool done = std::abs(next - rq) <= tol * std::abs(next);
    rq = next;
    if (done) {
      est.value = rq;
      est.iterations = it;
      est.converged = true;
      return est;
    }
  }
  est.value = rq;
  est.iterations = max_iter;
  est.converged = false;
  return est;
}

double trace_of_inverse(const HermitianMatrix& a) {
  const auto llt = factor_hpd(a);
  const Index n = a.size();
  // A^{-1} = L^{-H} L^{-1}, so Tr[A^{-1}] = ||L^{-1}||_F^2.
  CMatrix linv = CMatrix::Identity(n, n);
  llt.matrixL().solveInPlace(linv);
  return linv.squaredNorm();
}

CMatrix solve_hpd(const HermitianMatrix& a, const CMatrix& b) {
  if (b.rows() != a.size()) throw DimensionMismatch("solve_hpd: right-hand side has wrong row count");
  return factor_hpd(a).solve(b);
}

double condition_number(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a.matrix(), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double lo = ev.minCoeff();
  const double hi = ev.maxCoeff();
  if (lo <= 0.0) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

}  // namespace risest
