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

// Exact planners that see the true model. They define the regret baselines
// (ρ*_m for simultaneous selection, F*_0(ψ_0) for sequential selection).

#include <stdexcept>
#include <utility>
#include <vector>

#include "oos/model.hpp"
#include "oos/partial_state.hpp"
#include "oos/policy.hpp"

namespace oos {

namespace detail {

struct BestAction {
  Action action = 0;
  double mean = 0.0;  // r̄(action, ψ); 0 when p(ψ) = 0
};

inline BestAction best_true_action(const GenerativeModel& model, std::uint64_t code) {
  const double p = model.marginal_prob_code(code);
  BestAction best;
  if (!(p > 0.0)) return best;
  best.mean = model.weighted_reward_code(0, code) / p;
  for (Action a = 1; a < model.num_actions(); ++a) {
    const double r = model.weighted_reward_code(a, code) / p;
    if (strictly_better(r, best.mean)) best = {a, r};
  }
  return best;
}

}  // namespace detail

/// ρ(π) = β Σ_{ψ∈Ψ⁺(I)} p(ψ) r̄(h(ψ), ψ) − Σ_{i∈I} c_i.
inline double policy_gain_sim(const GenerativeModel& model, const SimPolicy& policy, double beta) {
  const auto partials = enumerate_partials(model.space(), policy.obs_set);
  if (policy.actions.size() != partials.size())
    throw std::invalid_argument("policy_gain_sim: action map is not total on the observation set");
  double reward = 0.0;
  for (std::size_t k = 0; k < partials.size(); ++k)
    reward += model.weighted_reward(policy.actions[k], partials[k]);
  return beta * reward - model.cost(policy.obs_set);
}

struct SimOracleResult {
  double value = 0.0;
  SimPolicy policy;
  /// V(I) for every I in enumerate_obs_sets order.
  std::vector<std::pair<ObservationSet, double>> set_values;
};

/// The fixed I-oracle: best actions on every outcome of I, and its value V(I).
inline std::pair<double, SimPolicy> fixed_set_oracle(const GenerativeModel& model, ObservationSet set,
                                                     double beta) {
  SimPolicy policy{set, {}};
  double value = 0.0;
  for (const PartialState& psi : enumerate_partials(model.space(), set)) {
    const std::uint64_t code = model.space().encode(psi);
    const auto best = detail::best_true_action(model, code);
    policy.actions.push_back(best.action);
    value += model.marginal_prob_code(code) * (beta * best.mean);
  }
  return {value - model.cost(set), std::move(policy)};
}

/// Best simultaneous policy with |I| ≤ m. Ties go to the smaller set, then
/// the lexicographically smaller one.
inline SimOracleResult oracle_sim(const GenerativeModel& model, int budget, double beta) {
  SimOracleResult result;
  bool first = true;
  for (ObservationSet set : enumerate_obs_sets(model.num_observations(), budget)) {
    auto [value, policy] = fixed_set_oracle(model, set, beta);
    result.set_values.emplace_back(set, value);
    if (first || strictly_better(value, result.value)) {
      result.value = value;
      result.policy = std::move(policy);
      first = false;
    }
  }
  return result;
}

struct SeqOracleResult {
  double value = 0.0;  // F*_0(ψ_0)
  SeqPolicy policy;
  /// F*_{|dom ψ|}(ψ) indexed by partial-state code (0 for codes with |dom| > m).
  std::vector<double> state_values;
};

/// Backward induction over phases m, m-1, ..., 0 with the true transition
/// probabilities. STOP wins ties, then the lowest observation id.
inline SeqOracleResult oracle_seq(const GenerativeModel& model, int budget, double beta) {
  const StateSpace& space = model.space();
  if (budget < 0 || budget > space.num_observations())
    throw std::invalid_argument("oracle_seq: require 0 <= m <= D");
  SeqOracleResult result;
  result.policy = SeqPolicy(space, budget);
  result.state_values.assign(space.num_codes(), 0.0);

  const auto sets = enumerate_obs_sets(space.num_observations(), budget);
  for (int layer = budget; layer >= 0; --layer) {
    for (ObservationSet set : sets) {
      if (set.size() != layer) continue;
      for (const PartialState& psi : enumerate_partials(space, set)) {
        const std::uint64_t code = space.encode(psi);
        const double p = model.marginal_prob_code(code);
        const auto best = detail::best_true_action(model, code);
        SeqDecision decision{kStop, best.action};
        double value = beta * best.mean;
        if (layer < budget && p > 0.0) {
          for (ObservationId i = 0; i < space.num_observations(); ++i) {
            if (psi.has(i)) continue;
            double q = -model.cost(i);
            for (const PartialState& next : extensions(space, psi, i)) {
              const std::uint64_t next_code = space.encode(next);
              q += model.marginal_prob_code(next_code) / p * result.state_values[next_code];
            }
            if (strictly_better(q, value)) {
              value = q;
              decision.observation = i;
            }
          }
        }
        result.state_values[code] = value;
        result.policy.set(psi, decision);
      }
    }
  }
  result.value = result.state_values[space.encode(space.empty_partial())];
  return result;
}

/// Exact expected gain of a sequential policy started from the empty state.
inline double policy_gain_seq(const GenerativeModel& model, const SeqPolicy& policy, double beta) {
  const StateSpace& space = model.space();
  // Probability-weighted value W(ψ) = p(ψ) F^π(ψ), well defined when p(ψ) = 0.
  auto weighted = [&](auto&& self, const PartialState& psi) -> double {
    const std::uint64_t code = space.encode(psi);
    const SeqDecision& d = policy.at(psi);
    if (d.observation == kStop || psi.domain_size() >= policy.budget())
      return beta * model.weighted_reward_code(d.action, code);
    double w = -model.cost(d.observation) * model.marginal_prob_code(code);
    for (const PartialState& next : extensions(space, psi, d.observation)) w += self(self, next);
    return w;
  };
  return weighted(weighted, space.empty_partial());
}

}  // namespace oos
