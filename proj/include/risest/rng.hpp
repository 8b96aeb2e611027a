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
#include <random>

#include "risest/types.hpp"

namespace risest {

// Seedable generator with platform-independent output. std::mt19937_64 is
// bit-specified by the standard; the uniform and normal transforms are done
// here because the std distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Independent stream for (seed, stream) pairs, e.g. one per Monte Carlo trial.
  static Rng stream(std::uint64_t seed, std::uint64_t stream_id);

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform();
  // Standard normal via Box-Muller.
  double normal();
  // Circularly symmetric complex Gaussian with E|z|^2 = variance.
  cplx complex_normal(double variance = 1.0);

  CMatrix complex_normal_matrix(Index rows, Index cols, double variance = 1.0);

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace risest
