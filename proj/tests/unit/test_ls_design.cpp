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

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "risest/baselines.hpp"
#include "risest/experiment.hpp"
#include "risest/ls_design.hpp"

using namespace risest;

namespace {
const ReflectionModel kModel{};

bool non_increasing(const DesignTrace& t) {
  for (std::size_t i = 1; i < t.entries.size(); ++i)
    if (t.entries[i].objective > t.entries[i - 1].objective) return false;
  return true;
}
}  // namespace

TEST_CASE("DFT training") {
  const TrainingMatrix x = dft_training(2, 2, RVector::Ones(2));
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(x.matrix()(0, 0) - h) < 1e-15);
  CHECK(std::abs(x.matrix()(0, 1) - h) < 1e-15);
  CHECK(std::abs(x.matrix()(1, 0) - h) < 1e-15);
  CHECK(std::abs(x.matrix()(1, 1) + h) < 1e-15);

  RVector p(2);
  p << 4.0, 1.0;
  const TrainingMatrix y = dft_training(2, 4, p);
  const CMatrix g = y.matrix() * y.matrix().adjoint();
  CHECK(g(0, 0).real() == doctest::Approx(4.0));
  CHECK(g(1, 1).real() == doctest::Approx(1.0));
  CHECK(std::abs(g(0, 1)) < 1e-14);

  Rng rng(1);
  for (Index K = 1; K <= 5; ++K)
    for (Index tau = K; tau <= 7; ++tau) {
      RVector pk(K);
      for (Index k = 0; k < K; ++k) pk(k) = 0.5 + 3.0 * rng.uniform();
      const TrainingMatrix z = dft_training(K, tau, pk);
      CMatrix d = CMatrix::Zero(K, K);
      d.diagonal() = pk.cast<cplx>();
      CHECK((z.matrix() * z.matrix().adjoint() - d).norm() < 1e-12);
    }
  CHECK_THROWS_AS(dft_training(3, 2, RVector::Ones(3)), InvalidArgument);
}

TEST_CASE("LS surrogate at an orthogonal pattern") {
  const ReflectionPattern v = naive_pattern(4, 5, ReflectionModel::ideal());
  const LsSurrogate s = ls_surrogate(v.matrix());
  CHECK(s.lambda1 == doctest::Approx(3.0));
  CHECK(s.A0.rows() == 5);
  CHECK(s.A0.cols() == 5);
  CHECK(s.evaluate(v.matrix()) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK_THROWS_AS(ls_surrogate(CMatrix::Ones(3, 3)), SingularGram);
}

TEST_CASE("LS surrogate is tangent and majorizes") {
  Rng rng(2);
  int checked = 0;
  while (checked < 100) {
    const ReflectionPattern a = random_pattern(3, 5, kModel, rng);
    const ReflectionPattern b = random_pattern(3, 5, kModel, rng);
    // The bound is established on the sublevel set of the expansion point.
    const bool a_higher = ls_objective(a.matrix()) >= ls_objective(b.matrix());
    const CMatrix& v0 = a_higher ? a.matrix() : b.matrix();
    const CMatrix& v = a_higher ? b.matrix() : a.matrix();
    const LsSurrogate s = ls_surrogate(v0);
    CHECK(oracle::rel_err(s.evaluate(v0), ls_objective(v0)) < 1e-8);
    CHECK(s.lambda1 == doctest::Approx(3.0 * std::pow(ls_objective(v0), 2)));
    CHECK(s.evaluate(v) >= ls_objective(v) * (1.0 - 1e-12));
    ++checked;
  }
}

TEST_CASE("LS surrogate gradient matches the objective gradient at tangency") {
  Rng rng(3);
  for (int i = 0; i < 10; ++i) {
    const CMatrix v0 = random_pattern(3, 5, kModel, rng).matrix();
    const LsSurrogate s = ls_surrogate(v0);
    auto all = [](Index, Index) { return true; };
    const CMatrix gf = oracle::fd_gradient([](const CMatrix& v) { return ls_objective(v); }, v0, all);
    const CMatrix gs = oracle::fd_gradient([&](const CMatrix& v) { return s.evaluate(v); }, v0, all, 1e-5);
    CHECK((gf - gs).norm() <= 1e-4 * gf.norm());
  }
}

TEST_CASE("LS pattern update under the ideal model is the phase-aligned closed form") {
  Rng rng(4);
  const ReflectionModel ideal = ReflectionModel::ideal();
  const PhaseSearch search(ideal);
  const ReflectionPattern v0 = random_pattern(3, 4, ideal, rng);
  const LsSurrogate s = ls_surrogate(v0.matrix());
  const ReflectionPattern v1 = mm_update_ls(v0, search);
  const ReflectionPattern expected = ideal_update_ls(s.A0);
  CHECK((v1.matrix() - expected.matrix()).norm() < 1e-12);
}

TEST_CASE("LS pattern update entries are feasible and grid-optimal") {
  Rng rng(5);
  const PhaseSearch search(kModel);
  const ReflectionPattern v0 = random_pattern(2, 3, kModel, rng);
  const LsSurrogate s = ls_surrogate(v0.matrix());
  const ReflectionPattern v1 = mm_update_ls(v0, search);
  CHECK(v1.feasible_under(kModel));
  CHECK(v1.matrix().row(2) == CMatrix::Ones(1, 3));
  for (Index n = 0; n < 3; ++n)
    for (Index m = 0; m < 2; ++m) {
      const auto dense = oracle::grid_minimum(s.lambda1, s.A0(n, m), kModel);
      const double ours = oracle::scalar_objective(std::arg(v1.matrix()(m, n)), s.lambda1, s.A0(n, m), kModel);
      const double scale = s.lambda1 + 2.0 * std::abs(s.A0(n, m));
      CHECK(ours <= dense.value + 1e-9 * scale);
    }
  CHECK(ls_objective(v1.matrix()) <= ls_objective(v0.matrix()));
}

TEST_CASE("LS design descends monotonically and stops") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Rng rng(seed);
    const ReflectionPattern init = random_pattern(6, 7, kModel, rng);
    const LsDesign d = design_ls(kModel, init, {});
    CHECK(non_increasing(d.trace));
    CHECK(d.trace.converged);
    CHECK(d.trace.final_objective() <= d.trace.initial_objective());
    CHECK(d.pattern.feasible_under(kModel));
    CHECK(d.trace.final_objective() == doctest::Approx(ls_objective(d.pattern.matrix())));
  }
  const LsDesign naive = design_ls(kModel, naive_pattern(8, 9, kModel), {});
  CHECK(naive.trace.final_objective() < ls_objective(naive_pattern(8, 9, kModel).matrix()));
}

TEST_CASE("LS design under the ideal model reaches the orthogonal optimum") {
  Rng rng(6);
  const ReflectionModel ideal = ReflectionModel::ideal();
  const Index M = 4, B = 5;
  DesignOptions opts;
  opts.accelerate = true;
  opts.eps = 1e-8;
  const LsDesign d = design_ls(ideal, random_pattern(M, B, ideal, rng), opts);
  // Optimum Tr[((M+1) I)^{-1}] = 1 for B = M+1.
  CHECK(d.trace.final_objective() == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("accelerated LS design needs fewer MM updates") {
  Rng rng(7);
  const ReflectionPattern init = random_pattern(8, 9, kModel, rng);
  DesignOptions plain;
  plain.eps = 1e-5;
  plain.max_iter = 5000;
  DesignOptions fast = plain;
  fast.accelerate = true;
  const LsDesign a = design_ls(kModel, init, plain);
  const LsDesign b = design_ls(kModel, init, fast);
  CHECK(non_increasing(b.trace));
  CHECK(b.trace.final_objective() <= a.trace.final_objective() * (1.0 + 1e-3));
  CHECK(b.trace.mm_calls() < a.trace.mm_calls());
  CHECK(b.pattern.feasible_under(kModel));
}

TEST_CASE("LS design is independent of the orthogonal training used") {
  const LsDesign d = design_ls(kModel, naive_pattern(5, 6, kModel), {});
  const double sigma2 = 0.3;
  const Index L = 2;
  RVector p(2);
  p << 1.0, 2.5;
  const TrainingMatrix x1 = dft_training(2, 2, p);
  const TrainingMatrix x2 = dft_training(2, 5, p);
  const double tx = 1.0 / p(0) + 1.0 / p(1);
  const double j1 = mse_ls(build_S(d.pattern, x1), sigma2, L) / (sigma2 * L * tx);
  const double j2 = mse_ls(build_S(d.pattern, x2), sigma2, L) / (sigma2 * L * tx);
  CHECK(oracle::rel_err(j1, j2) < 1e-10);
  CHECK(oracle::rel_err(j1, d.trace.final_objective()) < 1e-10);
}
