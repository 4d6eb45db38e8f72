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

#include <algorithm>
#include <bit>
#include <concepts>
#include <cmath>
#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "oos/model.hpp"
#include "oos/partial_state.hpp"

namespace oos {

/// An empirical estimate together with the sample count behind it.
struct Estimate {
  double value = 0.0;
  std::uint64_t count = 0;
};

struct ConfidenceParams {
  double delta = 0.1;
  std::uint64_t psi_tot = 1;  // Σ_{I∈P≤m(D)} |Ψ⁺(I)|
  std::uint64_t psi_max = 1;  // max_i |X_i|
  int num_actions = 1;
  int num_observations = 0;
};

inline ConfidenceParams make_confidence_params(const StateSpace& space, int num_actions, int budget,
                                               double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("confidence: delta must lie in (0,1)");
  ConfidenceParams params;
  params.delta = delta;
  params.psi_tot = count_partials_up_to(space, budget);
  params.psi_max = 1;
  for (ObservationId i = 0; i < space.num_observations(); ++i)
    params.psi_max = std::max<std::uint64_t>(params.psi_max, space.alphabet_size(i));
  params.num_actions = num_actions;
  params.num_observations = space.num_observations();
  return params;
}

/// Reward radius: min(1, sqrt(log(20 Ψ_tot A t^5 / δ) / (2 max(1, n)))).
inline double conf1(std::uint64_t n, std::uint64_t t, const ConfidenceParams& p) {
  if (t < 1) throw std::invalid_argument("conf1: t must be >= 1");
  const double log_term = std::log(20.0 * static_cast<double>(p.psi_tot) * p.num_actions / p.delta) +
                          5.0 * std::log(static_cast<double>(t));
  return std::min(1.0, std::sqrt(log_term / (2.0 * static_cast<double>(std::max<std::uint64_t>(1, n)))));
}

/// L1 radius of an unvisited distribution: the whole simplex.
inline constexpr double kUnvisitedL1Radius = 2.0;

/// Observation-probability radius for simultaneous selection:
/// min(1, sqrt(10 Ψ_tot log(4t/δ) / max(1, n))), and 2 when n = 0.
inline double conf2_sim(std::uint64_t n, std::uint64_t t, const ConfidenceParams& p) {
  if (t < 1) throw std::invalid_argument("conf2_sim: t must be >= 1");
  if (n == 0) return kUnvisitedL1Radius;
  const double num = 10.0 * static_cast<double>(p.psi_tot) * std::log(4.0 * static_cast<double>(t) / p.delta);
  return std::min(1.0, std::sqrt(num / static_cast<double>(n)));
}

/// Transition radius for sequential selection:
/// min(1, sqrt(10 Ψ_max log(4 D Ψ_tot t/δ) / max(1, n))), and 2 when n = 0.
inline double conf2_seq(std::uint64_t n, std::uint64_t t, const ConfidenceParams& p) {
  if (t < 1) throw std::invalid_argument("conf2_seq: t must be >= 1");
  if (n == 0) return kUnvisitedL1Radius;
  const double d = std::max(1, p.num_observations);
  const double num = 10.0 * static_cast<double>(p.psi_max) *
                     std::log(4.0 * d * static_cast<double>(p.psi_tot) * static_cast<double>(t) / p.delta);
  return std::min(1.0, std::sqrt(num / static_cast<double>(n)));
}

/// Radius providers consumed by the planners.
struct SimRadii {
  ConfidenceParams params;
  double reward(std::uint64_t n, std::uint64_t t) const { return conf1(n, t, params); }
  double distribution(std::uint64_t n, std::uint64_t t) const { return conf2_sim(n, t, params); }
};

struct SeqRadii {
  ConfidenceParams params;
  double reward(std::uint64_t n, std::uint64_t t) const { return conf1(n, t, params); }
  double distribution(std::uint64_t n, std::uint64_t t) const { return conf2_seq(n, t, params); }
};

struct ZeroRadii {
  double reward(std::uint64_t, std::uint64_t) const { return 0.0; }
  double distribution(std::uint64_t, std::uint64_t) const { return 0.0; }
};

/// Anything the planners can read estimates from: the online CounterStore,
/// or an exact model-backed source in tests.
template <class E>
concept EstimateSource = requires(const E& e, Action a, const PartialState& psi, ObservationId i) {
  { e.reward_estimate(a, psi) } -> std::convertible_to<Estimate>;
  { e.prob_estimate(psi) } -> std::convertible_to<Estimate>;
  { e.transition_estimate(psi, i, psi) } -> std::convertible_to<Estimate>;
};

template <class R>
concept RadiusProvider = requires(const R& r, std::uint64_t n, std::uint64_t t) {
  { r.reward(n, t) } -> std::convertible_to<double>;
  { r.distribution(n, t) } -> std::convertible_to<double>;
};

/// Sufficient statistics of the observation history.
///
/// Index sets are never stored; each is represented by its size (and, for
/// rewards, the running sum). Maps are keyed by partial-state codes and grow
/// lazily. In-round visit counts ν are reset by begin_round().
class CounterStore {
 public:
  CounterStore(StateSpace space, int num_actions) : space_(std::move(space)), num_actions_(num_actions) {
    if (num_actions_ < 1) throw std::invalid_argument("CounterStore: need at least one action");
  }

  const StateSpace& space() const { return space_; }
  int num_actions() const { return num_actions_; }
  std::uint64_t t() const { return steps_; }

  void begin_round() {
    round_actions_.clear();
    round_transitions_.clear();
  }

  /// One simultaneous-selection step: ψ_t over I_t, action a_t, reward r_t.
  /// Observation counters are credited to every substate of ψ_t; the reward
  /// only to the exact pair (a_t, ψ_t).
  void record_sim_step(ObservationSet obs_set, const PartialState& psi, Action a, double reward) {
    if (!(psi.domain() == obs_set)) throw std::invalid_argument("record_sim_step: domain(psi) != I_t");
    record_observation(psi);
    record_reward(a, psi, reward);
  }

  /// Credit ψ and all its substates to the observation-probability counters.
  void record_observation(const PartialState& psi) {
    check_partial(psi);
    const std::uint64_t code = space_.encode(psi);
    const std::uint32_t dom = psi.domain().mask();
    std::uint64_t digit[kMaxObservations];
    for (ObservationId i = 0; i < space_.num_observations(); ++i)
      digit[i] = code - space_.code_without(code, i);
    for (std::uint32_t sub = dom;; sub = (sub - 1) & dom) {
      std::uint64_t sub_code = 0;
      for (std::uint32_t m = sub; m != 0; m &= m - 1) sub_code += digit[std::countr_zero(m)];
      ++obs_sets_[sub];
      ++obs_partials_[sub_code];
      if (sub == 0) break;
    }
  }

  /// Terminal reward of a step; advances the global step count.
  void record_reward(Action a, const PartialState& psi, double reward) {
    check_action(a);
    check_partial(psi);
    const std::uint64_t key = action_key(a, space_.encode(psi));
    auto& stat = actions_[key];
    ++stat.count;
    stat.sum += reward;
    ++round_actions_[key];
    ++steps_;
  }

  /// One sequential phase ψ_l --i--> ψ_{l+1}. STOP phases carry no
  /// information and leave every counter untouched.
  void record_seq_phase(const PartialState& from, ObservationId i, const PartialState& to) {
    if (i == kStop) {
      if (!(from == to)) throw std::invalid_argument("record_seq_phase: STOP must not change the state");
      return;
    }
    check_partial(from);
    check_partial(to);
    if (i < 0 || i >= space_.num_observations() || from.has(i) || !to.has(i) ||
        !(extend(from, i, to.at(i)) == to))
      throw std::invalid_argument("record_seq_phase: inconsistent transition triple");
    const std::uint64_t pair = pair_key(space_.encode(from), i);
    ++transition_pairs_[pair];
    ++transitions_[pair_key(space_.encode(to), i)];
    ++round_transitions_[pair];
  }

  std::uint64_t obs_set_count(ObservationSet set) const { return lookup(obs_sets_, set.mask()); }
  std::uint64_t obs_partial_count(const PartialState& psi) const {
    return lookup(obs_partials_, space_.encode(psi));
  }
  std::uint64_t action_count(Action a, const PartialState& psi) const {
    auto it = actions_.find(action_key(a, space_.encode(psi)));
    return it == actions_.end() ? 0 : it->second.count;
  }
  double reward_sum(Action a, const PartialState& psi) const {
    auto it = actions_.find(action_key(a, space_.encode(psi)));
    return it == actions_.end() ? 0.0 : it->second.sum;
  }
  std::uint64_t transition_pair_count(const PartialState& from, ObservationId i) const {
    return lookup(transition_pairs_, pair_key(space_.encode(from), i));
  }
  std::uint64_t transition_count(const PartialState& from, ObservationId i, const PartialState& to) const {
    if (from.has(i) || !to.has(i) || !(extend(from, i, to.at(i)) == to)) return 0;
    return lookup(transitions_, pair_key(space_.encode(to), i));
  }
  std::uint64_t round_action_count(Action a, const PartialState& psi) const {
    return lookup(round_actions_, action_key(a, space_.encode(psi)));
  }
  std::uint64_t round_transition_count(const PartialState& from, ObservationId i) const {
    return lookup(round_transitions_, pair_key(space_.encode(from), i));
  }

  /// r̂(a, ψ), or 0 with count 0 when the pair was never played.
  Estimate reward_estimate(Action a, const PartialState& psi) const {
    auto it = actions_.find(action_key(a, space_.encode(psi)));
    if (it == actions_.end() || it->second.count == 0) return {0.0, 0};
    return {it->second.sum / static_cast<double>(it->second.count), it->second.count};
  }

  /// p̂(ψ) = N(dom ψ, ψ) / N(dom ψ); uniform over Ψ⁺(dom ψ) when unvisited.
  Estimate prob_estimate(const PartialState& psi) const {
    const ObservationSet dom = psi.domain();
    const std::uint64_t n = obs_set_count(dom);
    if (n == 0) return {1.0 / static_cast<double>(space_.count_partials(dom)), 0};
    return {static_cast<double>(obs_partial_count(psi)) / static_cast<double>(n), n};
  }

  /// p̂(ψ' | ψ, i); uniform over Ψ⁺(ψ, i) when the pair was never tried.
  Estimate transition_estimate(const PartialState& from, ObservationId i, const PartialState& to) const {
    const std::uint64_t n = transition_pair_count(from, i);
    if (n == 0) return {1.0 / static_cast<double>(space_.alphabet_size(i)), 0};
    return {static_cast<double>(transition_count(from, i, to)) / static_cast<double>(n), n};
  }

  /// Doubling rule: the in-round count of (a, ψ) has caught up with the count
  /// accumulated before the round, max(1, N_k(a, ψ)).
  bool action_round_complete(Action a, const PartialState& psi) const {
    const std::uint64_t nu = round_action_count(a, psi);
    return nu > 0 && nu >= std::max<std::uint64_t>(1, action_count(a, psi) - nu);
  }
  bool transition_round_complete(const PartialState& from, ObservationId i) const {
    const std::uint64_t nu = round_transition_count(from, i);
    return nu > 0 && nu >= std::max<std::uint64_t>(1, transition_pair_count(from, i) - nu);
  }

  // Raw views for invariant checks and dumps.
  const std::unordered_map<std::uint32_t, std::uint64_t>& obs_set_counts() const { return obs_sets_; }
  const std::unordered_map<std::uint64_t, std::uint64_t>& obs_partial_counts() const { return obs_partials_; }
  const std::unordered_map<std::uint64_t, std::uint64_t>& transition_pair_counts() const {
    return transition_pairs_;
  }
  const std::unordered_map<std::uint64_t, std::uint64_t>& transition_counts() const { return transitions_; }

  /// Split a transition key back into (ψ', i); ψ is ψ' without i.
  std::pair<std::uint64_t, ObservationId> split_pair_key(std::uint64_t key) const {
    const auto d = static_cast<std::uint64_t>(std::max(1, space_.num_observations()));
    return {key / d, static_cast<ObservationId>(key % d)};
  }

  /// Deterministic text dump (sorted keys), one counter per line.
  void dump(std::ostream& os) const {
    os << "t " << steps_ << '\n';
    for (const auto& [mask, n] : sorted(obs_sets_)) os << "obs_set " << to_string(ObservationSet(mask)) << ' ' << n << '\n';
    for (const auto& [code, n] : sorted(obs_partials_))
      os << "obs_partial " << to_string(space_.decode(code)) << ' ' << n << '\n';
    for (const auto& [key, stat] : sorted(actions_)) {
      const auto a = static_cast<Action>(key % static_cast<std::uint64_t>(num_actions_));
      os << "action " << a << ' ' << to_string(space_.decode(key / num_actions_)) << ' ' << stat.count << ' '
         << stat.sum << '\n';
    }
    for (const auto& [key, n] : sorted(transition_pairs_)) {
      auto [code, i] = split_pair_key(key);
      os << "transition_pair " << to_string(space_.decode(code)) << ' ' << i << ' ' << n << '\n';
    }
    for (const auto& [key, n] : sorted(transitions_)) {
      auto [code, i] = split_pair_key(key);
      os << "transition " << to_string(space_.decode(code)) << ' ' << i << ' ' << n << '\n';
    }
  }

 private:
  struct ActionStat {
    std::uint64_t count = 0;
    double sum = 0.0;
  };

  template <class Map>
  static std::map<typename Map::key_type, typename Map::mapped_type> sorted(const Map& m) {
    return {m.begin(), m.end()};
  }

  template <class Map, class Key>
  static std::uint64_t lookup(const Map& m, Key key) {
    auto it = m.find(key);
    return it == m.end() ? 0 : it->second;
  }

  std::uint64_t action_key(Action a, std::uint64_t code) const {
    return code * static_cast<std::uint64_t>(num_actions_) + static_cast<std::uint64_t>(a);
  }
  std::uint64_t pair_key(std::uint64_t code, ObservationId i) const {
    return code * static_cast<std::uint64_t>(std::max(1, space_.num_observations())) + static_cast<std::uint64_t>(i);
  }

  void check_action(Action a) const {
    if (a < 0 || a >= num_actions_) throw std::out_of_range("CounterStore: action out of range");
  }
  void check_partial(const PartialState& psi) const {
    if (!space_.is_valid(psi)) throw std::invalid_argument("CounterStore: partial state not in state space");
  }

  StateSpace space_;
  int num_actions_;
  std::uint64_t steps_ = 0;
  std::unordered_map<std::uint32_t, std::uint64_t> obs_sets_;
  std::unordered_map<std::uint64_t, std::uint64_t> obs_partials_;
  std::unordered_map<std::uint64_t, ActionStat> actions_;
  std::unordered_map<std::uint64_t, std::uint64_t> transition_pairs_;
  std::unordered_map<std::uint64_t, std::uint64_t> transitions_;
  std::unordered_map<std::uint64_t, std::uint64_t> round_actions_;
  std::unordered_map<std::uint64_t, std::uint64_t> round_transitions_;
};

}  // namespace oos
