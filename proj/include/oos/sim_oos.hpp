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

// Simultaneous optimistic observation selection: round-based planning with
// upper-confidence rewards and L1-optimistic observation probabilities.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "oos/estimation.hpp"
#include "oos/l1_solver.hpp"
#include "oos/model.hpp"
#include "oos/partial_state.hpp"
#include "oos/policy.hpp"
#include "oos/trace.hpp"

namespace oos {

/// Known problem quantities: everything a learner may see up front.
struct ProblemShape {
  StateSpace space;
  int num_actions = 1;
  std::vector<double> costs;

  static ProblemShape of(const GenerativeModel& model) {
    return {model.space(), model.num_actions(), model.costs()};
  }

  double cost(ObservationSet set) const {
    double c = 0.0;
    for (ObservationId i : set.members()) c += costs.at(i);
    return c;
  }
};

struct OptimisticAction {
  Action action = 0;
  double value = 0.0;  // β (r̂ + conf1)
};

/// max_a β (r̂(a, ψ) + conf1(N(a, ψ), t)), lowest action on ties.
template <EstimateSource E, RadiusProvider R>
OptimisticAction optimistic_action(const E& estimates, const R& radii, int num_actions, const PartialState& psi,
                                   double beta, std::uint64_t t) {
  OptimisticAction best;
  for (Action a = 0; a < num_actions; ++a) {
    const Estimate e = estimates.reward_estimate(a, psi);
    const double v = beta * (e.value + radii.reward(e.count, t));
    if (a == 0 || strictly_better(v, best.value)) best = {a, v};
  }
  return best;
}

struct SimPlan {
  SimPolicy policy;
  double value = 0.0;  // V̂(Î)
  /// V̂(I) for every I, in enumerate_obs_sets order.
  std::vector<std::pair<ObservationSet, double>> set_values;
};

/// One planning pass: V̂(I) for every I with |I| ≤ m and the argmax policy.
template <EstimateSource E, RadiusProvider R>
SimPlan plan_sim_policy(const E& estimates, const R& radii, const ProblemShape& shape, int budget, double beta,
                        std::uint64_t t) {
  SimPlan plan;
  bool first = true;
  std::vector<double> p_hat;
  std::vector<double> values;
  std::vector<Action> actions;
  for (ObservationSet set : enumerate_obs_sets(shape.space.num_observations(), budget)) {
    const auto partials = enumerate_partials(shape.space, set);
    p_hat.clear();
    values.clear();
    actions.clear();
    std::uint64_t set_count = 0;
    for (const PartialState& psi : partials) {
      const Estimate p = estimates.prob_estimate(psi);
      set_count = p.count;
      p_hat.push_back(p.value);
      const OptimisticAction best = optimistic_action(estimates, radii, shape.num_actions, psi, beta, t);
      values.push_back(best.value);
      actions.push_back(best.action);
    }
    const double radius = radii.distribution(set_count, t);
    const double v = l1_linear_max(p_hat, values, radius).value - shape.cost(set);
    plan.set_values.emplace_back(set, v);
    if (first || strictly_better(v, plan.value)) {
      plan.value = v;
      plan.policy = SimPolicy{set, actions};
      first = false;
    }
  }
  return plan;
}

struct SimOosConfig {
  int budget = 1;
  double beta = 1.0;
  double delta = 0.1;
};

/// Online learner. Reads only the problem shape from the model; the
/// environment supplies states and rewards.
class SimOos {
 public:
  SimOos(ProblemShape shape, SimOosConfig config)
      : shape_(std::move(shape)),
        config_(config),
        radii_{make_confidence_params(shape_.space, shape_.num_actions, config.budget, config.delta)},
        counters_(shape_.space, shape_.num_actions) {
    if (config_.budget < 0 || config_.budget > shape_.space.num_observations())
      throw std::invalid_argument("SimOos: budget must satisfy 0 <= m <= D");
  }

  const CounterStore& counters() const { return counters_; }
  const SimPlan& plan() const { return plan_; }
  const ConfidenceParams& confidence() const { return radii_.params; }
  std::uint64_t rounds() const { return rounds_; }

  /// Called after every planning pass with the plan and its t_k.
  std::function<void(const SimPlan&, std::uint64_t)> on_plan;

  const SimPlan& plan_round() {
    const std::uint64_t t_k = counters_.t() + 1;
    plan_ = plan_sim_policy(counters_, radii_, shape_, config_.budget, config_.beta, t_k);
    counters_.begin_round();
    ++rounds_;
    if (on_plan) on_plan(plan_, t_k);
    return plan_;
  }

  /// Plan, then act until the doubling rule fires or max_steps steps ran.
  std::uint64_t run_round(Environment& env, std::uint64_t max_steps, RunTrace& trace) {
    plan_round();
    const ObservationSet set = plan_.policy.obs_set;
    const double cost = shape_.cost(set);
    std::uint64_t steps = 0;
    while (steps < max_steps) {
      const StateVector phi = env.draw_state();
      const PartialState psi = restrict_to(phi, set);
      const Action a = plan_.policy.action_for(shape_.space, psi);
      const double r = env.draw_reward(a, phi);
      counters_.record_sim_step(set, psi, a, r);
      ++steps;
      trace.steps.push_back({counters_.t(), set, cost, a, r});
      if (counters_.action_round_complete(a, psi)) break;
    }
    trace.rounds = rounds_;
    return steps;
  }

  RunTrace run(std::uint64_t horizon, Environment& env) {
    if (horizon < 1) throw std::invalid_argument("SimOos::run: horizon must be >= 1");
    RunTrace trace;
    trace.algorithm = "sim-oos";
    trace.steps.reserve(horizon);
    std::uint64_t done = 0;
    while (done < horizon) done += run_round(env, horizon - done, trace);
    return trace;
  }

 private:
  ProblemShape shape_;
  SimOosConfig config_;
  SimRadii radii_;
  CounterStore counters_;
  SimPlan plan_;
  std::uint64_t rounds_ = 0;
};

inline RunTrace run_sim_oos(std::uint64_t horizon, const GenerativeModel& model, const SimOosConfig& config,
                            std::uint64_t seed) {
  Environment env(model, seed);
  SimOos learner(ProblemShape::of(model), config);
  return learner.run(horizon, env);
}

}  // namespace oos
