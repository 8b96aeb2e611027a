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

#include <cstdint>

#include "risest/rng.hpp"
#include "risest/types.hpp"

namespace risest {

// Exponential correlation coefficients at the UEs, the RIS and the BS.
struct CorrelationSpec {
  double psi_ue = 0.2;
  double psi_ris = 0.4;
  double psi_bs = 0.6;

  void validate() const;
};

// Array sizes of the uplink: K single-antenna UEs, M RIS elements, L BS antennas.
struct ChannelDims {
  Index K = 2;
  Index M = 8;
  Index L = 4;
};

struct ChannelRealization {
  CMatrix G;   // L x M, RIS -> BS
  CMatrix Hr;  // M x K, UEs -> RIS
  CMatrix Hd;  // L x K, UEs -> BS
};

/// [Psi]_{ij} = psi^{|i-j|}. Throws InvalidArgument unless 0 <= psi < 1.
RMatrix exp_correlation(Index n, double psi);

/// Principal square root of a symmetric PSD matrix via its eigendecomposition.
RMatrix symmetric_sqrt(const RMatrix& a);

/// Kronecker-model sampler. Square roots are computed once per instance.
///
///   Hr = Psi_RIS^{1/2} W1 Psi_UE^{T/2}
///   G  = Psi_BS^{1/2}  W2 Psi_RIS^{T/2}
///   Hd = Psi_BS^{1/2}  W3 Psi_UE^{T/2}
///
/// with W* i.i.d. CN(0, 1). Draw order is Hr, G, Hd, each column-major.
class ChannelSampler {
 public:
  ChannelSampler(ChannelDims dims, CorrelationSpec corr);

  ChannelRealization sample(Rng& rng) const;

  const ChannelDims& dims() const { return dims_; }

 private:
  ChannelDims dims_;
  CMatrix sqrt_ue_;
  CMatrix sqrt_ris_;
  CMatrix sqrt_bs_;
};

ChannelRealization sample_channels(std::uint64_t seed, const ChannelDims& dims,
                                   const CorrelationSpec& corr);

/// Gamma = [g_1 h_{r,1}^H, ..., g_M h_{r,M}^H, Hd], size L x (M+1)K, where
/// h_{r,m}^H is the m-th row of Hr.
CMatrix cascaded_channel(const ChannelRealization& ch);

/// Analytic E{Gamma^H Gamma}:
///   blkdiag( L (Psi_RIS .* Psi_RIS) (x) Psi_UE ,  L Psi_UE )
CMatrix cascaded_correlation(const CorrelationSpec& corr, const ChannelDims& dims);

}  // namespace risest
