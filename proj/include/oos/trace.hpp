// Copyright 2026 The oos Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "oos/model.hpp"
#include "oos/partial_state.hpp"

namespace oos {

/// One online step: observations bought, what they cost, the action, the
/// realized reward.
struct StepRecord {
  std::uint64_t t = 0;  // 1-based
  ObservationSet obs_set;
  double cost = 0.0;
  Action action = 0;
  double reward = 0.0;
};

struct RunTrace {
  std::string algorithm;
  std::vector<StepRecord> steps;
  std::uint64_t rounds = 0;

  std::size_t size() const { return steps.size(); }
};

/// Gain = (1/T) Σ_t [β r_t − Σ_{i∈I_t} c_i].
inline double compute_gain(const RunTrace& trace, double beta) {
  if (trace.steps.empty()) throw std::invalid_argument("compute_gain: empty trace");
  double total = 0.0;
  for (const StepRecord& s : trace.steps) total += beta * s.reward - s.cost;
  return total / static_cast<double>(trace.steps.size());
}

/// Reg_T = T·v* − Σ_t (β r_t − cost_t) against the matching oracle value.
inline double compute_regret(const RunTrace& trace, double oracle_value, double beta) {
  double total = 0.0;
  for (const StepRecord& s : trace.steps) total += beta * s.reward - s.cost;
  return static_cast<double>(trace.steps.size()) * oracle_value - total;
}

/// Cumulative regret after each of the given 1-based checkpoints.
inline std::vector<double> regret_curve(const RunTrace& trace, double oracle_value, double beta,
                                        const std::vector<std::uint64_t>& checkpoints) {
  std::vector<double> out;
  out.reserve(checkpoints.size());
  double cumulative = 0.0;
  std::size_t next = 0;
  for (std::size_t k = 0; k < trace.steps.size() && next < checkpoints.size(); ++k) {
    const StepRecord& s = trace.steps[k];
    cumulative += oracle_value - (beta * s.reward - s.cost);
    while (next < checkpoints.size() && checkpoints[next] == k + 1) {
      out.push_back(cumulative);
      ++next;
    }
  }
  return out;
}

}  // namespace oos
