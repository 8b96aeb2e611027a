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

#include "risest/baselines.hpp"

#include <cmath>

namespace risest {

SchemeId SchemeId::parse(const std::string& text) {
  if (text == "proposed") return {Scheme::Proposed, 1};
  if (text == "ideal") return {Scheme::IdealRis, 1};
  if (text == "ideal-projection") return {Scheme::IdealRisProjection, 1};
  if (text == "naive") return {Scheme::Naive, 1};
  if (text == "onoff") return {Scheme::OnOff, 1};
  const std::string prefix = "grouped:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string tail = text.substr(prefix.size());
    std::size_t used = 0;
    int rho = 0;
    try {
      rho = std::stoi(tail, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == tail.size() && !tail.empty() && rho >= 1) return {Scheme::ProposedGrouped, rho};
  }
  throw ConfigError("unknown scheme '" + text + "'");
}

std::string SchemeId::name() const {
  switch (kind) {
    case Scheme::Proposed: return "proposed";
    case Scheme::IdealRis: return "ideal";
    case Scheme::IdealRisProjection: return "ideal-projection";
    case Scheme::Naive: return "naive";
    case Scheme::OnOff: return "onoff";
    case Scheme::ProposedGrouped: return "grouped:" + std::to_string(rho);
  }
  return "?";
}

ReflectionPattern ideal_update_ls(const CMatrix& a0) {
  const Index B = a0.rows();
  const Index M = a0.cols() - 1;
  CMatrix v = CMatrix::Ones(M + 1, B);
  for (Index n = 0; n < B; ++n)
    for (Index m = 0; m < M; ++m) v(m, n) = std::polar(1.0, -std::arg(-a0(n, m)));
  return ReflectionPattern(std::move(v));
}

ReflectionPattern ideal_update_lmmse(const CMatrix& c_map) {
  const Index M = c_map.rows() - 1;
  const Index B = c_map.cols();
  CMatrix v = CMatrix::Ones(M + 1, B);
  for (Index n = 0; n < B; ++n)
    for (Index m = 0; m < M; ++m) v(m, n) = std::polar(1.0, -std::arg(c_map(m, n)));
  return ReflectionPattern(std::move(v));
}

ReflectionPattern naive_pattern(Index M, Index B, const ReflectionModel& model) {
  if (M < 1 || B < M + 1) throw InvalidArgument("naive_pattern: need B >= M+1");
  CMatrix v = CMatrix::Ones(M + 1, B);
  for (Index m = 0; m < M; ++m)
    for (Index n = 0; n < B; ++n) {
      const double d = -kTwoPi * static_cast<double>(((m + 1) * n) % B) / static_cast<double>(B);
      v(m, n) = reflection_coefficient(wrap_phase(d), model);
    }
  return ReflectionPattern(std::move(v));
}

ReflectionPattern onoff_pattern(Index M, Index B) {
  if (M < 1 || B != M + 1) throw InvalidArgument("onoff_pattern: need B = M+1");
  CMatrix v = CMatrix::Zero(M + 1, B);
  for (Index b = 0; b < M; ++b) v(b, b) = 1.0;
  v.row(M).setOnes();
  return ReflectionPattern(std::move(v));
}

Grouping::Grouping(Index M, Index rho) : M_(M), rho_(rho) {
  if (M < 1 || rho < 1 || M % rho != 0) throw InvalidArgument("Grouping: rho must divide M");
}

RMatrix Grouping::indicator() const {
  RMatrix e = RMatrix::Zero(M_, groups());
  for (Index m = 0; m < M_; ++m) e(m, m / rho_) = 1.0;
  return e;
}

ReflectionPattern Grouping::expand(const ReflectionPattern& grouped) const {
  if (grouped.elements() != groups()) throw DimensionMismatch("Grouping::expand: pattern has wrong element count");
  const CMatrix& g = grouped.matrix();
  CMatrix v(M_ + 1, g.cols());
  for (Index m = 0; m < M_; ++m) v.row(m) = g.row(m / rho_);
  v.row(M_) = g.row(groups());
  return ReflectionPattern(std::move(v));
}

CMatrix Grouping::channel_map(Index K) const {
  const Index G = groups();
  CMatrix t = CMatrix::Zero((M_ + 1) * K, (G + 1) * K);
  for (Index m = 0; m < M_; ++m)
    for (Index k = 0; k < K; ++k) t(m * K + k, (m / rho_) * K + k) = 1.0;
  for (Index k = 0; k < K; ++k) t(M_ * K + k, G * K + k) = 1.0;
  return t;
}

CMatrix grouped_correlation(const CorrelationSpec& corr, const ChannelDims& dims, const Grouping& grouping) {
  if (grouping.elements() != dims.M) throw DimensionMismatch("grouped_correlation: grouping does not match M");
  const CMatrix t = grouping.channel_map(dims.K);
  return t.adjoint() * cascaded_correlation(corr, dims) * t;
}

}  // namespace risest
