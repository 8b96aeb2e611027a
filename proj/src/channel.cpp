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

#include "risest/channel.hpp"

#include <cmath>
#include <string>

namespace risest {

namespace {

void check_psi(double psi, const char* name) {
  if (!(psi >= 0.0 && psi < 1.0))
    throw InvalidArgument(std::string(name) + " must lie in [0, 1), got " + std::to_string(psi));
}

}  // namespace

void CorrelationSpec::validate() const {
  check_psi(psi_ue, "psi_ue");
  check_psi(psi_ris, "psi_ris");
  check_psi(psi_bs, "psi_bs");
}

RMatrix exp_correlation(Index n, double psi) {
  check_psi(psi, "psi");
  if (n < 1) throw InvalidArgument("exp_correlation: n must be >= 1");
  RMatrix out(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) out(i, j) = std::pow(psi, static_cast<double>(std::abs(i - j)));
  return out;
}

RMatrix symmetric_sqrt(const RMatrix& a) {
  Eigen::SelfAdjointEigenSolver<RMatrix> es(a);
  const RVector root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().transpose();
}

ChannelSampler::ChannelSampler(ChannelDims dims, CorrelationSpec corr) : dims_(dims) {
  corr.validate();
  if (dims.K < 1 || dims.M < 1 || dims.L < 1) throw InvalidArgument("ChannelSampler: dimensions must be >= 1");
  sqrt_ue_ = symmetric_sqrt(exp_correlation(dims.K, corr.psi_ue)).cast<cplx>();
  sqrt_ris_ = symmetric_sqrt(exp_correlation(dims.M, corr.psi_ris)).cast<cplx>();
  sqrt_bs_ = symmetric_sqrt(exp_correlation(dims.L, corr.psi_bs)).cast<cplx>();
}

ChannelRealization ChannelSampler::sample(Rng& rng) const {
  ChannelRealization ch;
  const CMatrix w_r = rng.complex_normal_matrix(dims_.M, dims_.K);
  const CMatrix w_g = rng.complex_normal_matrix(dims_.L, dims_.M);
  const CMatrix w_d = rng.complex_normal_matrix(dims_.L, dims_.K);
  ch.Hr = sqrt_ris_ * w_r * sqrt_ue_.transpose();
  ch.G = sqrt_bs_ * w_g * sqrt_ris_.transpose();
  ch.Hd = sqrt_bs_ * w_d * sqrt_ue_.transpose();
  return ch;
}

ChannelRealization sample_channels(std::uint64_t seed, const ChannelDims& dims,
                                   const CorrelationSpec& corr) {
  Rng rng(seed);
  return ChannelSampler(dims, corr).sample(rng);
}

CMatrix cascaded_channel(const ChannelRealization& ch) {
  const Index L = ch.G.rows();
  const Index M = ch.G.cols();
  const Index K = ch.Hr.cols();
  if (ch.Hr.rows() != M || ch.Hd.rows() != L || ch.Hd.cols() != K)
    throw DimensionMismatch("cascaded_channel: inconsistent channel dimensions");
  CMatrix gamma(L, (M + 1) * K);
  for (Index m = 0; m < M; ++m) gamma.block(0, m * K, L, K) = ch.G.col(m) * ch.Hr.row(m);
  gamma.block(0, M * K, L, K) = ch.Hd;
  return gamma;
}

CMatrix cascaded_correlation(const CorrelationSpec& corr, const ChannelDims& dims) {
  corr.validate();
  const Index K = dims.K;
  const Index M = dims.M;
  const double L = static_cast<double>(dims.L);
  const RMatrix psi_ue = exp_correlation(K, corr.psi_ue);
  const RMatrix psi_ris = exp_correlation(M, corr.psi_ris);
  const RMatrix hadamard = psi_ris.cwiseProduct(psi_ris);
  CMatrix r = CMatrix::Zero((M + 1) * K, (M + 1) * K);
  r.topLeftCorner(M * K, M * K) = L * kron(hadamard.cast<cplx>(), psi_ue.cast<cplx>());
  r.bottomRightCorner(K, K) = L * psi_ue.cast<cplx>();
  return r;
}

}  // namespace risest
