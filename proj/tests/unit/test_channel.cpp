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
#include "risest/channel.hpp"

using namespace risest;

TEST_CASE("exponential correlation") {
  const RMatrix a = exp_correlation(2, 0.5);
  CHECK(a(0, 0) == 1.0);
  CHECK(a(0, 1) == 0.5);
  CHECK(a(1, 0) == 0.5);
  CHECK(exp_correlation(3, 0.0).isIdentity());
  const RMatrix b = exp_correlation(4, 0.4);
  CHECK(b(0, 3) == doctest::Approx(0.064));
  CHECK(oracle::min_eig(b.cast<cplx>()) > 0.0);
  CHECK_THROWS_AS(exp_correlation(3, 1.0), InvalidArgument);
  CHECK_THROWS_AS(exp_correlation(3, -0.1), InvalidArgument);
  CHECK_THROWS_AS((CorrelationSpec{0.2, 1.0, 0.6}.validate()), InvalidArgument);
}

TEST_CASE("symmetric square root") {
  const RMatrix a = exp_correlation(5, 0.7);
  const RMatrix r = symmetric_sqrt(a);
  CHECK((r - r.transpose()).norm() < 1e-14);
  CHECK((r * r - a).norm() < 1e-12);
}

TEST_CASE("sampling is deterministic per seed") {
  const ChannelDims dims{2, 3, 4};
  const CorrelationSpec corr{};
  const auto a = sample_channels(7, dims, corr);
  const auto b = sample_channels(7, dims, corr);
  const auto c = sample_channels(8, dims, corr);
  CHECK(a.G == b.G);
  CHECK(a.Hr == b.Hr);
  CHECK(a.Hd == b.Hd);
  CHECK(a.G != c.G);
  CHECK(a.G.rows() == 4);
  CHECK(a.G.cols() == 3);
  CHECK(a.Hr.rows() == 3);
  CHECK(a.Hr.cols() == 2);
  CHECK(a.Hd.rows() == 4);
  CHECK(a.Hd.cols() == 2);
}

TEST_CASE("white channels have unit-variance uncorrelated entries") {
  const ChannelSampler sampler({2, 2, 2}, {0.0, 0.0, 0.0});
  Rng rng(9);
  const int n = 10000;
  double var = 0.0;
  cplx cross = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto ch = sampler.sample(rng);
    var += std::norm(ch.G(0, 0)) + std::norm(ch.Hr(1, 0)) + std::norm(ch.Hd(0, 1));
    cross += ch.Hr(0, 0) * std::conj(ch.Hr(1, 0));
  }
  CHECK(var / (3.0 * n) == doctest::Approx(1.0).epsilon(0.05));
  CHECK(std::abs(cross / static_cast<double>(n)) < 0.05);
}

TEST_CASE("RIS-side correlation of the UE link") {
  const ChannelSampler sampler({1, 3, 1}, {0.0, 0.4, 0.0});
  Rng rng(10);
  const int n = 100000;
  cplx acc = 0.0;
  double p0 = 0.0, p1 = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto ch = sampler.sample(rng);
    acc += ch.Hr(0, 0) * std::conj(ch.Hr(1, 0));
    p0 += std::norm(ch.Hr(0, 0));
    p1 += std::norm(ch.Hr(1, 0));
  }
  const double rho = acc.real() / std::sqrt(p0 * p1);
  CHECK(rho == doctest::Approx(0.4).epsilon(0.125));  // 0.4 +- 0.05
}

TEST_CASE("covariance of vec(Hr) is Psi_UE (x) Psi_RIS") {
  const CorrelationSpec corr{0.3, 0.5, 0.0};
  const Index M = 3, K = 2;
  const ChannelSampler sampler({K, M, 1}, corr);
  const RMatrix expected = kron(exp_correlation(K, corr.psi_ue).cast<cplx>(),
                                exp_correlation(M, corr.psi_ris).cast<cplx>()).real();
  Rng rng(16);
  const int n = 100000;
  CMatrix cov = CMatrix::Zero(M * K, M * K);
  for (int i = 0; i < n; ++i) {
    const auto ch = sampler.sample(rng);
    const CVector v = Eigen::Map<const CVector>(ch.Hr.data(), M * K);
    cov += v * v.adjoint();
  }
  cov /= static_cast<double>(n);
  Rng pick(17);
  for (int s = 0; s < 10; ++s) {
    const Index i = static_cast<Index>(pick.uniform() * M * K);
    const Index j = static_cast<Index>(pick.uniform() * M * K);
    CHECK(std::abs(cov(i, j) - expected(i, j)) < 0.05);
  }
}

// Block m is g_m times row m of H_r (h_{r,m} is column m of H_r^H).
TEST_CASE("cascaded channel blocks") {
  ChannelRealization ch;
  ch.G = CMatrix::Constant(1, 1, cplx(1.0, 2.0));
  ch.Hr = CMatrix::Constant(1, 1, cplx(0.5, -1.0));
  ch.Hd = CMatrix::Constant(1, 1, cplx(3.0, 0.0));
  const CMatrix g = cascaded_channel(ch);
  REQUIRE(g.cols() == 2);
  CHECK(std::abs(g(0, 0) - cplx(1.0, 2.0) * cplx(0.5, -1.0)) < 1e-15);
  CHECK(g(0, 1) == cplx(3.0, 0.0));

  const auto r = sample_channels(21, {2, 2, 2}, {});
  const CMatrix gamma = cascaded_channel(r);
  for (Index l = 0; l < 2; ++l)
    for (Index m = 0; m < 2; ++m)
      for (Index k = 0; k < 2; ++k) CHECK(std::abs(gamma(l, m * 2 + k) - r.G(l, m) * r.Hr(m, k)) < 1e-15);
  for (Index l = 0; l < 2; ++l)
    for (Index k = 0; k < 2; ++k) CHECK(gamma(l, 4 + k) == r.Hd(l, k));
  for (Index m = 0; m < 2; ++m) {
    Eigen::JacobiSVD<CMatrix> svd(gamma.block(0, m * 2, 2, 2));
    CHECK(svd.singularValues()(1) < 1e-12 * svd.singularValues()(0));
  }

  ChannelRealization bad = r;
  bad.Hd = CMatrix::Zero(3, 2);
  CHECK_THROWS_AS(cascaded_channel(bad), DimensionMismatch);
}

TEST_CASE("cascaded correlation structure") {
  const CMatrix white = cascaded_correlation({0.0, 0.0, 0.0}, {2, 3, 4});
  CHECK((white - 4.0 * CMatrix::Identity(8, 8)).norm() < 1e-14);

  const CMatrix r = cascaded_correlation({0.0, 0.4, 0.0}, {1, 2, 3});
  CHECK(r(0, 1).real() == doctest::Approx(3.0 * 0.16));
  CHECK(r(0, 2) == cplx(0.0, 0.0));

  const ChannelDims dims{2, 5, 3};
  const CMatrix full = cascaded_correlation({}, dims);
  CHECK(full.trace().real() == doctest::Approx(3.0 * 2.0 * 6.0).epsilon(1e-14));
  CHECK((full - full.adjoint()).norm() == 0.0);
  CHECK(oracle::min_eig(full) > 0.0);
}

TEST_CASE("sample covariance of the cascaded channel matches the analytic one") {
  const ChannelDims dims{2, 2, 2};
  const CorrelationSpec corr{};
  const ChannelSampler sampler(dims, corr);
  const CMatrix r = cascaded_correlation(corr, dims);
  Rng rng(22);
  const int n = 100000;
  CMatrix acc = CMatrix::Zero(6, 6);
  for (int i = 0; i < n; ++i) {
    const CMatrix g = cascaded_channel(sampler.sample(rng));
    acc += g.adjoint() * g;
  }
  acc /= static_cast<double>(n);
  const double L = static_cast<double>(dims.L);
  for (Index i = 0; i < 6; ++i)
    for (Index j = 0; j < 6; ++j) CHECK(std::abs(acc(i, j) - r(i, j)) < 0.05 * L);
  // Reflected and direct blocks are uncorrelated.
  CHECK(acc.block(0, 4, 4, 2).cwiseAbs().maxCoeff() < 0.05 * L);
}
