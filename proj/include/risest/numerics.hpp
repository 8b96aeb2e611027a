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

#include "risest/types.hpp"

namespace risest {

// Dense complex matrix that is Hermitian by contract. Construction checks
// ||A - A^H||_F / ||A||_F < 1e-10 and stores the exactly symmetrized matrix.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const CMatrix& a);

  const CMatrix& matrix() const { return a_; }
  Index size() const { return a_.rows(); }

 private:
  CMatrix a_;
};

struct EigenEstimate {
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Largest eigenvalue of a PSD Hermitian matrix by power iteration.
///
/// Stops when the Rayleigh quotient changes by less than tol (relative). The
/// start vector is fixed, so repeated calls give identical results. On
/// non-convergence the last estimate is returned with converged == false;
/// callers that need an upper bound inflate the value themselves.
EigenEstimate largest_eigenvalue(const HermitianMatrix& a, double tol = 1e-8,
                                 int max_iter = 1000);

/// Tr[A^{-1}] for Hermitian PD A through a Cholesky factor.
/// Throws SingularGram when A is not PD or its condition exceeds kMaxCondition.
double trace_of_inverse(const HermitianMatrix& a);

/// Solves A X = B for Hermitian PD A. Throws SingularGram like trace_of_inverse.
CMatrix solve_hpd(const HermitianMatrix& a, const CMatrix& b);

/// 2-norm condition number from the eigenvalues (inf when singular).
double condition_number(const HermitianMatrix& a);

}  // namespace risest
