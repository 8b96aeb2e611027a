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

#include <chrono>
#include <vector>

namespace risest {

struct TraceEntry {
  int iteration = 0;
  double objective = 0.0;
  int mm_calls = 0;  // cumulative MM-update (surrogate rebuild) count
  double wall_ms = 0.0;
};

// Per-iteration history of an iterative design. Entry 0 is the initial point.
struct DesignTrace {
  std::vector<TraceEntry> entries;
  bool converged = false;

  int iterations() const { return entries.empty() ? 0 : entries.back().iteration; }
  int mm_calls() const { return entries.empty() ? 0 : entries.back().mm_calls; }
  double final_objective() const { return entries.empty() ? 0.0 : entries.back().objective; }
  double initial_objective() const { return entries.empty() ? 0.0 : entries.front().objective; }
};

struct DesignOptions {
  double eps = 1e-3;
  // 0 selects the default budget: 500 plain MM iterations, 100 accelerated.
  int max_iter = 0;
  bool accelerate = false;
  int grid_points = 1024;

  int iteration_budget() const { return max_iter > 0 ? max_iter : (accelerate ? 100 : 500); }
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline bool relative_change_below(double previous, double current, double eps) {
  const double denom = previous != 0.0 ? (previous < 0 ? -previous : previous) : 1.0;
  const double diff = current - previous;
  return (diff < 0 ? -diff : diff) / denom < eps;
}

}  // namespace risest
