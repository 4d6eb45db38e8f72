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

// Sequential optimistic observation selection. Each round solves an
// optimistic dynamic program over partial states with at most m entries:
// terminal layer from upper-confidence rewards, earlier layers from
// L1-optimistic transition distributions.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "oos/estimation.hpp"
#include "oos/l1_solver.hpp"
#include "oos/model.hpp"
#include "oos/partial_state.hpp"
#include "oos/policy.hpp"
#include "oos/sim_oos.hpp"
#include "oos/trace.hpp"

namespace oos {

struct OdpPlan {
  SeqPolicy policy;
  std::unordered_map<std::uint64_t, double> f_hat;  // keyed by partial-state code
  std::unordered_map<std::uint64_t, double> q_hat;  // keyed by q_key(code, i), i may be kStop

  static std::uint64_t q_key(const StateSpace& space, std::uint64_t code, ObservationId i) {
    return code * static_cast<std::uint64_t>(space.num_observations() + 1) + static_cast<std::uint64_t>(i + 1);
  }

  double value(const PartialState& psi) const { return f_hat.at(policy.space().encode(psi)); }
  double q(const PartialState& psi, ObservationId i) const {
    return q_hat.at(q_key(policy.space(), policy.space().encode(psi), i));
  }
  /// F̂_0(ψ_0).
  double root_value() const { return value(policy.space().empty_partial()); }
};

/// Optimistic dynamic programming over layers m, m-1, ..., 0. STOP wins
/// ties, then the lowest observation id.
template <EstimateSource E, RadiusProvider R>
OdpPlan odp_plan(const E& estimates, const R& radii, const ProblemShape& shape, int budget, double beta,
                 std::uint64_t t) {
  const StateSpace& space = shape.space;
  if (budget < 0 || budget > space.num_observations()) throw std::invalid_argument("odp_plan: require 0 <= m <= D");
  OdpPlan plan;
  plan.policy = SeqPolicy(space, budget);
  const auto sets = enumerate_obs_sets(space.num_observations(), budget);
  std::vector<double> p_hat;
  std::vector<double> next_values;
  for (int layer = budget; layer >= 0; --layer) {
    for (ObservationSet set : sets) {
      if (set.size() != layer) continue;
      for (const PartialState& psi : enumerate_partials(space, set)) {
        const std::uint64_t code = space.encode(psi);
        const OptimisticAction stop = optimistic_action(estimates, radii, shape.num_actions, psi, beta, t);
        SeqDecision decision{kStop, stop.action};
        double best = stop.value;
        plan.q_hat[OdpPlan::q_key(space, code, kStop)] = stop.value;
        if (layer < budget) {
          for (ObservationId i = 0; i < space.num_observations(); ++i) {
            if (psi.has(i)) continue;
            p_hat.clear();
            next_values.clear();
            std::uint64_t pair_count = 0;
            for (const PartialState& next : extensions(space, psi, i)) {
              const Estimate e = estimates.transition_estimate(psi, i, next);
              pair_count = e.count;
              p_hat.push_back(e.value);
              next_values.push_back(plan.f_hat.at(space.encode(next)));
            }
            const double q =
                -shape.costs.at(i) + l1_linear_max(p_hat, next_values, radii.distribution(pair_count, t)).value;
            plan.q_hat[OdpPlan::q_key(space, code, i)] = q;
            if (strictly_better(q, best)) {
              best = q;
              decision.observation = i;
            }
          }
        }
        plan.f_hat[code] = best;
        plan.policy.set(psi, decision);
      }
    }
  }
  return plan;
}

struct SeqOosConfig {
  int budget = 1;
  double beta = 1.0;
  double delta = 0.1;
};

class SeqOos {
 public:
  SeqOos(ProblemShape shape, SeqOosConfig config)
      : shape_(std::move(shape)),
        config_(config),
        radii_{make_confidence_params(shape_.space, shape_.num_actions, config.budget, config.delta)},
        counters_(shape_.space, shape_.num_actions) {
    if (config_.budget < 0 || config_.budget > shape_.space.num_observations())
      throw std::invalid_argument("SeqOos: budget must satisfy 0 <= m <= D");
  }

  const CounterStore& counters() const { return counters_; }
  const OdpPlan& plan() const { return plan_; }
  const ConfidenceParams& confidence() const { return radii_.params; }
  std::uint64_t rounds() const { return rounds_; }

  std::function<void(const OdpPlan&, std::uint64_t)> on_plan;

  const OdpPlan& plan_round() {
    const std::uint64_t t_k = counters_.t() + 1;
    plan_ = odp_plan(counters_, radii_, shape_, config_.budget, config_.beta, t_k);
    counters_.begin_round();
    ++rounds_;
    if (on_plan) on_plan(plan_, t_k);
    return plan_;
  }

  /// Walk the phases of one step under the current plan. Returns true when a
  /// counter touched by the step completed its doubling condition.
  bool step(Environment& env, RunTrace& trace) {
    const StateVector phi = env.draw_state();
    PartialState psi = shape_.space.empty_partial();
    double cost = 0.0;
    bool round_done = false;
    for (int phase = 0; phase < config_.budget; ++phase) {
      const ObservationId i = plan_.policy.observation(psi);
      if (i == kStop) break;
      PartialState next = extend(psi, i, phi[i]);
      counters_.record_seq_phase(psi, i, next);
      cost += shape_.costs[i];
      round_done = round_done || counters_.transition_round_complete(psi, i);
      psi = std::move(next);
    }
    const Action a = plan_.policy.action(psi);
    const double r = env.draw_reward(a, phi);
    counters_.record_reward(a, psi, r);
    round_done = round_done || counters_.action_round_complete(a, psi);
    trace.steps.push_back({counters_.t(), psi.domain(), cost, a, r});
    return round_done;
  }

  std::uint64_t run_round(Environment& env, std::uint64_t max_steps, RunTrace& trace) {
    plan_round();
    std::uint64_t steps = 0;
    while (steps < max_steps) {
      ++steps;
      if (step(env, trace)) break;
    }
    trace.rounds = rounds_;
    return steps;
  }

  RunTrace run(std::uint64_t horizon, Environment& env) {
    if (horizon < 1) throw std::invalid_argument("SeqOos::run: horizon must be >= 1");
    RunTrace trace;
    trace.algorithm = "seq-oos";
    trace.steps.reserve(horizon);
    std::uint64_t done = 0;
    while (done < horizon) done += run_round(env, horizon - done, trace);
    return trace;
  }

 private:
  ProblemShape shape_;
  SeqOosConfig config_;
  SeqRadii radii_;
  CounterStore counters_;
  OdpPlan plan_;
  std::uint64_t rounds_ = 0;
};

inline RunTrace run_seq_oos(std::uint64_t horizon, const GenerativeModel& model, const SeqOosConfig& config,
                            std::uint64_t seed) {
  Environment env(model, seed);
  SeqOos learner(ProblemShape::of(model), config);
  return learner.run(horizon, env);
}

}  // namespace oos
