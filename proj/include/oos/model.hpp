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
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "oos/partial_state.hpp"
#include "oos/random.hpp"

namespace oos {

using Action = int;

/// Marker for the "stop observing" choice of a sequential policy.
inline constexpr ObservationId kStop = -1;

enum class RewardNoise { kBernoulli, kTruncatedUniform };

inline std::string to_string(RewardNoise noise) {
  return noise == RewardNoise::kBernoulli ? "bernoulli" : "truncated-uniform";
}

inline RewardNoise parse_reward_noise(const std::string& s) {
  if (s == "bernoulli") return RewardNoise::kBernoulli;
  if (s == "truncated-uniform") return RewardNoise::kTruncatedUniform;
  throw std::invalid_argument("unknown reward noise '" + s + "'");
}

/// Ground truth of a costly-observation bandit: joint distribution over full
/// state vectors, mean reward per (action, state) and per-observation costs.
///
/// The joint and reward tables are dense in row-major state order (see
/// StateSpace::state_index). Marginals over every partial state are
/// tabulated once at construction, so all exact queries are O(D).
class GenerativeModel {
 public:
  GenerativeModel(StateSpace space, std::vector<double> joint, int num_actions,
                  std::vector<double> mean_reward, std::vector<double> costs,
                  RewardNoise noise = RewardNoise::kBernoulli)
      : space_(std::move(space)),
        joint_(std::move(joint)),
        num_actions_(num_actions),
        mean_reward_(std::move(mean_reward)),
        costs_(std::move(costs)),
        noise_(noise) {
    validate();
    build_tables();
  }

  const StateSpace& space() const { return space_; }
  int num_observations() const { return space_.num_observations(); }
  int num_actions() const { return num_actions_; }
  RewardNoise noise() const { return noise_; }
  const std::vector<double>& joint() const { return joint_; }
  const std::vector<double>& mean_reward_table() const { return mean_reward_; }
  const std::vector<double>& costs() const { return costs_; }
  double cost(ObservationId i) const { return costs_.at(i); }

  double cost(ObservationSet set) const {
    double c = 0.0;
    for (ObservationId i : set.members()) c += costs_.at(i);
    return c;
  }

  double total_cost() const { return std::accumulate(costs_.begin(), costs_.end(), 0.0); }

  double prob(const StateVector& phi) const { return joint_[space_.state_index(phi)]; }

  /// r̄(a, φ).
  double mean_reward(Action a, const StateVector& phi) const {
    check_action(a);
    return mean_reward_[space_.state_index(phi) * num_actions_ + a];
  }

  double mean_reward_at(Action a, std::uint64_t state_index) const {
    return mean_reward_[state_index * num_actions_ + a];
  }

  /// p(ψ) = Pr(Φ ∼ ψ).
  double marginal_prob(const PartialState& psi) const { return marginal_prob_code(space_.encode(psi)); }
  double marginal_prob_code(std::uint64_t code) const { return marginal_prob_[code]; }

  /// Σ_{φ∼ψ} p(φ) r̄(a, φ); equals p(ψ) r̄(a, ψ) and is defined for p(ψ) = 0.
  double weighted_reward(Action a, const PartialState& psi) const {
    check_action(a);
    return weighted_reward_[space_.encode(psi) * num_actions_ + a];
  }
  double weighted_reward_code(Action a, std::uint64_t code) const {
    return weighted_reward_[code * num_actions_ + a];
  }

  /// r̄(a, ψ) = E[r̄(a, Φ) | Φ ∼ ψ]. Conditioning on a null event is an error.
  double marginal_reward(Action a, const PartialState& psi) const {
    check_action(a);
    const std::uint64_t code = space_.encode(psi);
    const double p = marginal_prob_[code];
    if (!(p > 0.0)) throw std::domain_error("marginal_reward: partial state has zero probability");
    return weighted_reward_[code * num_actions_ + a] / p;
  }

  /// p(ψ' | ψ, i). `i == kStop` is the deterministic stay transition.
  double transition_prob(const PartialState& from, ObservationId i, const PartialState& to) const {
    const double p = marginal_prob(from);
    if (!(p > 0.0)) throw std::domain_error("transition_prob: source partial state has zero probability");
    if (i == kStop) return from == to ? 1.0 : 0.0;
    if (i < 0 || i >= num_observations()) throw std::out_of_range("transition_prob: bad observation id");
    if (from.has(i) || !to.has(i)) return 0.0;
    if (!(extend(from, i, to.at(i)) == to)) return 0.0;
    return marginal_prob(to) / p;
  }

  /// Draw φ from the joint by inverse CDF.
  StateVector sample_state(Rng& rng) const { return space_.state_at(sample_state_index(rng)); }

  std::uint64_t sample_state_index(Rng& rng) const {
    const double u = uniform01(rng) * cdf_.back();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    // upper_bound never lands on a zero-mass cell; the guard covers u == total.
    if (it == cdf_.end()) --it;
    return static_cast<std::uint64_t>(it - cdf_.begin());
  }

  /// Random reward with mean r̄(a, φ), supported on [0, 1].
  double sample_reward(Action a, const StateVector& phi, Rng& rng) const {
    return draw_reward(mean_reward(a, phi), rng);
  }

  double draw_reward(double mean, Rng& rng) const {
    const double u = uniform01(rng);
    if (noise_ == RewardNoise::kBernoulli) return u < mean ? 1.0 : 0.0;
    const double half_width = std::min(mean, 1.0 - mean);
    return mean + (2.0 * u - 1.0) * half_width;
  }

  /// Same model with every observation cost replaced.
  GenerativeModel with_costs(std::vector<double> costs) const {
    return GenerativeModel(space_, joint_, num_actions_, mean_reward_, std::move(costs), noise_);
  }

 private:
  void check_action(Action a) const {
    if (a < 0 || a >= num_actions_) throw std::out_of_range("action out of range");
  }

  void validate() const {
    if (num_actions_ < 1) throw std::invalid_argument("GenerativeModel: need at least one action");
    if (space_.num_states() > 5'000'000)
      throw std::invalid_argument("GenerativeModel: state space too large for a dense table");
    if (joint_.size() != space_.num_states())
      throw std::invalid_argument("GenerativeModel: joint table has wrong size");
    double total = 0.0;
    for (double p : joint_) {
      if (!(p >= 0.0) || !std::isfinite(p)) throw std::invalid_argument("GenerativeModel: negative probability");
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-12)
      throw std::invalid_argument("GenerativeModel: joint does not sum to 1");
    if (mean_reward_.size() != space_.num_states() * static_cast<std::size_t>(num_actions_))
      throw std::invalid_argument("GenerativeModel: reward table has wrong size");
    for (double r : mean_reward_)
      if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("GenerativeModel: mean reward outside [0,1]");
    if (static_cast<int>(costs_.size()) != space_.num_observations())
      throw std::invalid_argument("GenerativeModel: wrong number of costs");
    for (double c : costs_)
      if (!(c >= 0.0) || !std::isfinite(c))
        throw std::invalid_argument("GenerativeModel: invalid cost");
  }

  void build_tables() {
    const int d = num_observations();
    const std::uint64_t n_codes = space_.num_codes();
    if (n_codes * static_cast<std::uint64_t>(num_actions_ + 1) > 50'000'000ull)
      throw std::invalid_argument("GenerativeModel: partial-state table too large");
    marginal_prob_.assign(n_codes, 0.0);
    weighted_reward_.assign(n_codes * num_actions_, 0.0);
    cdf_.resize(joint_.size());
    std::partial_sum(joint_.begin(), joint_.end(), cdf_.begin());

    // Scatter every full state onto each of its 2^D restrictions.
    std::vector<std::uint64_t> digit_value(d);
    for (std::uint64_t s = 0; s < space_.num_states(); ++s) {
      const double p = joint_[s];
      if (p == 0.0) continue;
      const std::uint64_t full_code = space_.encode(space_.state_at(s));
      for (int i = 0; i < d; ++i) digit_value[i] = full_code - space_.code_without(full_code, i);
      for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << d); ++mask) {
        std::uint64_t code = 0;
        for (std::uint32_t m = mask; m != 0; m &= m - 1) code += digit_value[std::countr_zero(m)];
        marginal_prob_[code] += p;
        for (Action a = 0; a < num_actions_; ++a)
          weighted_reward_[code * num_actions_ + a] += p * mean_reward_[s * num_actions_ + a];
      }
    }
  }

  StateSpace space_;
  std::vector<double> joint_;
  int num_actions_;
  std::vector<double> mean_reward_;
  std::vector<double> costs_;
  RewardNoise noise_;

  std::vector<double> marginal_prob_;
  std::vector<double> weighted_reward_;
  std::vector<double> cdf_;
};

inline StateVector sample_state(const GenerativeModel& model, Rng& rng) { return model.sample_state(rng); }

inline double sample_reward(const GenerativeModel& model, Action a, const StateVector& phi, Rng& rng) {
  return model.sample_reward(a, phi, rng);
}

inline double marginal_prob(const GenerativeModel& model, const PartialState& psi) {
  return model.marginal_prob(psi);
}

inline double marginal_reward(const GenerativeModel& model, Action a, const PartialState& psi) {
  return model.marginal_reward(a, psi);
}

inline double transition_prob(const GenerativeModel& model, const PartialState& from, ObservationId i,
                              const PartialState& to) {
  return model.transition_prob(from, i, to);
}

/// Online environment: one model, two private random streams (states and
/// rewards) so that runs with the same seed see the same state sequence and
/// the same reward uniforms regardless of the decisions taken.
class Environment {
 public:
  Environment(const GenerativeModel& model, std::uint64_t seed)
      : model_(&model), state_rng_(make_stream(seed, 1)), reward_rng_(make_stream(seed, 2)) {}

  const GenerativeModel& model() const { return *model_; }

  StateVector draw_state() { return model_->sample_state(state_rng_); }

  double draw_reward(Action a, const StateVector& phi) { return model_->sample_reward(a, phi, reward_rng_); }

 private:
  const GenerativeModel* model_;
  Rng state_rng_;
  Rng reward_rng_;
};

}  // namespace oos
