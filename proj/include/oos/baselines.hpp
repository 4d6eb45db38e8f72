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
#include <limits>
#include <stdexcept>
#include <vector>

#include "oos/model.hpp"
#include "oos/partial_state.hpp"
#include "oos/policy.hpp"
#include "oos/random.hpp"
#include "oos/trace.hpp"

namespace oos {

struct UcbArmStats {
  std::uint64_t pulls = 0;
  double mean = 0.0;

  void update(double reward) {
    ++pulls;
    mean += (reward - mean) / static_cast<double>(pulls);
  }
};

/// UCB1 choice: the first untried arm, otherwise argmax mean + sqrt(2 ln t / n).
inline std::size_t ucb1_select(const UcbArmStats* arms, std::size_t count, std::uint64_t t) {
  for (std::size_t k = 0; k < count; ++k)
    if (arms[k].pulls == 0) return k;
  const double log_t = std::log(static_cast<double>(std::max<std::uint64_t>(t, 1)));
  std::size_t best = 0;
  double best_index = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < count; ++k) {
    const double index = arms[k].mean + std::sqrt(2.0 * log_t / static_cast<double>(arms[k].pulls));
    if (index > best_index) {
      best_index = index;
      best = k;
    }
  }
  return best;
}

/// Observe every observation each step (paying Σ c_i) and run UCB1
/// independently per full context.
inline RunTrace contextual_ucb_run(std::uint64_t horizon, const GenerativeModel& model, double beta,
                                   std::uint64_t seed) {
  if (horizon < 1) throw std::invalid_argument("contextual_ucb_run: horizon must be >= 1");
  (void)beta;  // β does not enter the per-context arm choice
  Environment env(model, seed);
  const StateSpace& space = model.space();
  const auto num_actions = static_cast<std::size_t>(model.num_actions());
  const ObservationSet all = ObservationSet::full(space.num_observations());
  const double cost = model.total_cost();
  std::vector<UcbArmStats> stats(space.num_states() * num_actions);

  RunTrace trace;
  trace.algorithm = "contextual-ucb";
  trace.steps.reserve(horizon);
  for (std::uint64_t t = 1; t <= horizon; ++t) {
    const StateVector phi = env.draw_state();
    UcbArmStats* arms = &stats[space.state_index(phi) * num_actions];
    const auto a = static_cast<Action>(ucb1_select(arms, num_actions, t));
    const double r = env.draw_reward(a, phi);
    arms[a].update(r);
    trace.steps.push_back({t, all, cost, a, r});
  }
  trace.rounds = 0;
  return trace;
}

class PolicySpaceOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kMaxMetaArms = 10'000;

/// |Π| = Σ_{I∈P≤m(D)} A^{|Ψ⁺(I)|}, saturating at `cap + 1`.
inline std::uint64_t count_sim_policies(const StateSpace& space, int num_actions, int budget,
                                        std::uint64_t cap = kMaxMetaArms) {
  std::uint64_t total = 0;
  for (ObservationSet set : enumerate_obs_sets(space.num_observations(), budget)) {
    std::uint64_t n = 1;
    const std::uint64_t partials = space.count_partials(set);
    for (std::uint64_t k = 0; k < partials && n <= cap; ++k) n *= static_cast<std::uint64_t>(num_actions);
    total += n;
    if (total > cap) return cap + 1;
  }
  return total;
}

/// Every simultaneous policy as an arm, in obs-set order then action maps in
/// lexicographic order (first partial state most significant).
inline std::vector<SimPolicy> enumerate_sim_policies(const StateSpace& space, int num_actions, int budget,
                                                     std::uint64_t cap = kMaxMetaArms) {
  const std::uint64_t count = count_sim_policies(space, num_actions, budget, cap);
  if (count > cap)
    throw PolicySpaceOverflow("meta-action policy space exceeds " + std::to_string(cap) + " arms");
  std::vector<SimPolicy> out;
  out.reserve(count);
  for (ObservationSet set : enumerate_obs_sets(space.num_observations(), budget)) {
    const auto partials = static_cast<std::size_t>(space.count_partials(set));
    std::uint64_t maps = 1;
    for (std::size_t k = 0; k < partials; ++k) maps *= static_cast<std::uint64_t>(num_actions);
    for (std::uint64_t index = 0; index < maps; ++index) {
      std::vector<Action> actions(partials, 0);
      std::uint64_t rest = index;
      for (std::size_t k = partials; k-- > 0;) {
        actions[k] = static_cast<Action>(rest % static_cast<std::uint64_t>(num_actions));
        rest /= static_cast<std::uint64_t>(num_actions);
      }
      out.push_back(SimPolicy{set, std::move(actions)});
    }
  }
  return out;
}

/// UCB1 over meta-actions (observation set plus action map). Arm rewards are
/// β r − Σ_{i∈I} c_i mapped affinely from [−Σ_i c_i, β] onto [0, 1].
inline RunTrace meta_ucb_run(std::uint64_t horizon, const GenerativeModel& model, double beta, int budget,
                             std::uint64_t seed) {
  if (horizon < 1) throw std::invalid_argument("meta_ucb_run: horizon must be >= 1");
  const std::vector<SimPolicy> arms = enumerate_sim_policies(model.space(), model.num_actions(), budget);
  std::vector<double> arm_costs;
  arm_costs.reserve(arms.size());
  for (const SimPolicy& p : arms) arm_costs.push_back(model.cost(p.obs_set));
  const double lo = -model.total_cost();
  const double span = beta - lo;

  Environment env(model, seed);
  std::vector<UcbArmStats> stats(arms.size());
  RunTrace trace;
  trace.algorithm = "meta-ucb";
  trace.steps.reserve(horizon);
  for (std::uint64_t t = 1; t <= horizon; ++t) {
    const std::size_t k = ucb1_select(stats.data(), stats.size(), t);
    const SimPolicy& policy = arms[k];
    const StateVector phi = env.draw_state();
    const Action a = policy.action_for(model.space(), restrict_to(phi, policy.obs_set));
    const double r = env.draw_reward(a, phi);
    const double net = beta * r - arm_costs[k];
    stats[k].update(span > 0.0 ? (net - lo) / span : 0.0);
    trace.steps.push_back({t, policy.obs_set, arm_costs[k], a, r});
  }
  trace.rounds = 0;
  return trace;
}

/// Uniformly random observation set (|I| ≤ m) and uniformly random action.
inline RunTrace uniform_random_run(std::uint64_t horizon, const GenerativeModel& model, int budget,
                                   std::uint64_t seed) {
  Environment env(model, seed);
  Rng choice = make_stream(seed, 3);
  const auto sets = enumerate_obs_sets(model.num_observations(), budget);
  RunTrace trace;
  trace.algorithm = "uniform-random";
  trace.steps.reserve(horizon);
  for (std::uint64_t t = 1; t <= horizon; ++t) {
    const ObservationSet set = sets[uniform_index(choice, sets.size())];
    const auto a = static_cast<Action>(uniform_index(choice, static_cast<std::uint64_t>(model.num_actions())));
    const StateVector phi = env.draw_state();
    const double r = env.draw_reward(a, phi);
    trace.steps.push_back({t, set, model.cost(set), a, r});
  }
  trace.rounds = 0;
  return trace;
}

}  // namespace oos
