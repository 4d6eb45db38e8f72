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

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "oos/model.hpp"
#include "oos/partial_state.hpp"

namespace oos {

/// Relative tolerance under which two objective values count as tied. Every
/// argmax in the library resolves ties toward the earlier candidate in its
/// documented enumeration order.
inline constexpr double kTieTolerance = 1e-12;

inline bool strictly_better(double candidate, double incumbent) {
  return candidate > incumbent + kTieTolerance * std::max(1.0, std::abs(incumbent));
}

/// Simultaneous policy {I, h}: observe the set I, then act on the revealed
/// partial state. `actions[k]` is the action for the k-th element of
/// enumerate_partials(space, obs_set).
struct SimPolicy {
  ObservationSet obs_set;
  std::vector<Action> actions;

  Action action_for(const StateSpace& space, const PartialState& psi) const {
    return actions.at(space.rank_within_domain(psi));
  }

  friend bool operator==(const SimPolicy&, const SimPolicy&) = default;
};

struct SeqDecision {
  ObservationId observation = kStop;  // next observation, or kStop
  Action action = 0;                  // action taken if this state is terminal
  friend bool operator==(const SeqDecision&, const SeqDecision&) = default;
};

/// Sequential policy {g, h} keyed by partial-state code. States with m
/// observations always carry kStop.
class SeqPolicy {
 public:
  SeqPolicy() = default;
  explicit SeqPolicy(StateSpace space, int budget) : space_(std::move(space)), budget_(budget) {}

  const StateSpace& space() const { return space_; }
  int budget() const { return budget_; }

  void set(const PartialState& psi, SeqDecision decision) {
    if (decision.observation != kStop && psi.has(decision.observation))
      throw std::logic_error("SeqPolicy: observation already in domain");
    if (psi.domain_size() >= budget_ && decision.observation != kStop)
      throw std::logic_error("SeqPolicy: budget exhausted but policy continues");
    decisions_[space_.encode(psi)] = decision;
  }

  const SeqDecision& at(const PartialState& psi) const { return decisions_.at(space_.encode(psi)); }
  ObservationId observation(const PartialState& psi) const { return at(psi).observation; }
  Action action(const PartialState& psi) const { return at(psi).action; }
  bool contains(const PartialState& psi) const { return decisions_.count(space_.encode(psi)) != 0; }
  std::size_t size() const { return decisions_.size(); }
  const std::unordered_map<std::uint64_t, SeqDecision>& decisions() const { return decisions_; }

 private:
  StateSpace space_;
  int budget_ = 0;
  std::unordered_map<std::uint64_t, SeqDecision> decisions_;
};

}  // namespace oos
