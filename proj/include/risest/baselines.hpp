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

#include <string>

#include "risest/channel.hpp"
#include "risest/phase_model.hpp"
#include "risest/system.hpp"

namespace risest {

enum class Scheme { Proposed, IdealRis, IdealRisProjection, Naive, OnOff, ProposedGrouped };

struct SchemeId {
  Scheme kind = Scheme::Proposed;
  int rho = 1;  // only meaningful for ProposedGrouped

  // Accepts proposed, ideal, ideal-projection, naive, onoff, grouped:<rho>.
  static SchemeId parse(const std::string& text);
  std::string name() const;

  friend bool operator==(const SchemeId&, const SchemeId&) = default;
};

/// Unit-modulus LS pattern step: [V]_{m,n} = exp(-j arg(-[A0]_{n,m})).
ReflectionPattern ideal_update_ls(const CMatrix& a0);

/// Unit-modulus LMMSE pattern step: [V]_{m,n} = exp(-j arg(c_{m,n})).
/// c_map is (M+1) x B; its last row is ignored.
ReflectionPattern ideal_update_lmmse(const CMatrix& c_map);

/// Rows 1..M of a B-point DFT matrix (row 0 coincides with the direct link
/// and is skipped), projected onto the amplitude law. Needs B >= M+1.
ReflectionPattern naive_pattern(Index M, Index B, const ReflectionModel& model);

/// One element on per subframe, last subframe direct link only. Needs B = M+1.
ReflectionPattern onoff_pattern(Index M, Index B);

/// Neighbouring elements sharing one coefficient, rho per group.
class Grouping {
 public:
  Grouping(Index M, Index rho);

  Index elements() const { return M_; }
  Index rho() const { return rho_; }
  Index groups() const { return M_ / rho_; }
  // Pilot symbols needed: K (M / rho + 1).
  Index overhead(Index K) const { return K * (groups() + 1); }

  // M x groups() 0/1 membership matrix.
  RMatrix indicator() const;
  // (groups()+1) x B designed pattern -> (M+1) x B deployed pattern.
  ReflectionPattern expand(const ReflectionPattern& grouped) const;
  // Maps the full cascaded channel onto the grouped one: Gamma_g = Gamma T.
  CMatrix channel_map(Index K) const;

 private:
  Index M_;
  Index rho_;
};

/// Correlation of the grouped cascaded channel, T^H R_Gamma T.
CMatrix grouped_correlation(const CorrelationSpec& corr, const ChannelDims& dims, const Grouping& grouping);

}  // namespace risest
