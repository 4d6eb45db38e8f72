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

#include <gtest/gtest.h>

#include <cmath>

#include "oos/exact_estimates.hpp"
#include "oos/oracle.hpp"
#include "oos/sim_oos.hpp"
#include "oos/synthetic.hpp"

namespace oos {
namespace {

GenerativeModel random_small(std::uint64_t seed, int d = 3, int alphabet = 2, int actions = 2) {
  RandomModelSpec s;
  s.seed = seed;
  s.num_observations = d;
  s.alphabet_size = alphabet;
  s.num_actions = actions;
  return make_random_model(s);
}

TEST(SimOos, ColdStartPlanPrefersTheCheapestSet) {
  const auto m = random_small(1);
  SimOos learner(ProblemShape::of(m), {2, 3.0, 0.1});
  const SimPlan& plan = learner.plan_round();
  for (const auto& [set, v] : plan.set_values) EXPECT_NEAR(v, 3.0 - m.cost(set), 1e-12);
  EXPECT_TRUE(plan.policy.obs_set.empty());
  EXPECT_NEAR(plan.value, 3.0, 1e-12);
}

TEST(SimOos, FreeUselessObservationsTieToTheEmptySet) {
  StateSpace space({{0, 1}});
  GenerativeModel m(space, {0.5, 0.5}, 1, {0.5, 0.5}, {0.0});
  SimOos learner(ProblemShape::of(m), {1, 1.0, 0.1});
  EXPECT_TRUE(learner.plan_round().policy.obs_set.empty());
}

TEST(SimOos, ExactEstimatesAndZeroRadiiReproduceTheOracle) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto m = random_small(seed, 3, 3, 3);
    for (int budget = 0; budget <= 3; ++budget) {
      const auto plan = plan_sim_policy(ExactEstimates(m), ZeroRadii{}, ProblemShape::of(m), budget, 1.0, 1);
      const auto oracle = oracle_sim(m, budget, 1.0);
      EXPECT_NEAR(plan.value, oracle.value, 1e-9);
      EXPECT_EQ(plan.policy.obs_set, oracle.policy.obs_set);
      EXPECT_EQ(plan.policy.actions, oracle.policy.actions);
    }
  }
}

TEST(SimOos, OneStepHorizon) {
  const auto m = random_small(2);
  const RunTrace trace = run_sim_oos(1, m, {2, 1.0, 0.1}, 5);
  EXPECT_EQ(trace.steps.size(), 1u);
  EXPECT_EQ(trace.rounds, 1u);
}

TEST(SimOos, FirstRoundEndsOnAFreshPair) {
  const auto m = random_small(3);
  Environment env(m, 1);
  SimOos learner(ProblemShape::of(m), {2, 1.0, 0.1});
  RunTrace trace;
  EXPECT_EQ(learner.run_round(env, 100, trace), 1u);
}

TEST(SimOos, RoundCountIsLogarithmic) {
  const auto m = random_small(4);
  const std::uint64_t horizon = 20000;
  const RunTrace trace = run_sim_oos(horizon, m, {2, 1.0, 0.1}, 1);
  const auto params = make_confidence_params(m.space(), m.num_actions(), 2, 0.1);
  EXPECT_LE(static_cast<double>(trace.rounds),
            params.psi_tot * m.num_actions() * (std::log2(static_cast<double>(horizon)) + 2.0));
}

TEST(SimOos, BudgetAndCostsPerStep) {
  const auto m = random_small(5, 4, 2, 2);
  const RunTrace trace = run_sim_oos(5000, m, {2, 1.0, 0.1}, 3);
  ASSERT_EQ(trace.steps.size(), 5000u);
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    const StepRecord& s = trace.steps[k];
    EXPECT_EQ(s.t, k + 1);
    EXPECT_LE(s.obs_set.size(), 2);
    EXPECT_EQ(s.cost, m.cost(s.obs_set));
  }
}

TEST(SimOos, SameSeedSameTrace) {
  const auto m = random_small(6);
  const RunTrace a = run_sim_oos(3000, m, {2, 1.0, 0.1}, 8);
  const RunTrace b = run_sim_oos(3000, m, {2, 1.0, 0.1}, 8);
  ASSERT_EQ(a.steps.size(), b.steps.size());
  for (std::size_t k = 0; k < a.steps.size(); ++k) {
    EXPECT_EQ(a.steps[k].obs_set, b.steps[k].obs_set);
    EXPECT_EQ(a.steps[k].action, b.steps[k].action);
    EXPECT_EQ(a.steps[k].reward, b.steps[k].reward);
  }
  EXPECT_EQ(a.rounds, b.rounds);
}

TEST(SimOos, NoDecisionsMeansNoRegret) {
  // D = 0, A = 1: every step is the same coin flip as the oracle's
  StateSpace space(std::vector<std::vector<Symbol>>{});
  GenerativeModel m(space, {1.0}, 1, {0.3}, {});
  const std::uint64_t horizon = 100000;
  const RunTrace trace = run_sim_oos(horizon, m, {0, 1.0, 0.1}, 1);
  const double regret = compute_regret(trace, oracle_sim(m, 0, 1.0).value, 1.0);
  EXPECT_LE(std::abs(regret), 3.0 * std::sqrt(horizon * 0.3 * 0.7));
}

TEST(SimOos, OptimisticAtTheBestSet) {
  // V̂_k(I*) >= V(I*) at every planning pass in all but a δ fraction of runs
  const auto m = random_small(7, 2, 2, 2);
  const auto oracle = oracle_sim(m, 2, 1.0);
  int violating_runs = 0;
  const int runs = 200;
  for (int seed = 1; seed <= runs; ++seed) {
    Environment env(m, static_cast<std::uint64_t>(seed));
    SimOos learner(ProblemShape::of(m), {2, 1.0, 0.1});
    bool violated = false;
    learner.on_plan = [&](const SimPlan& plan, std::uint64_t) {
      for (const auto& [set, v] : plan.set_values)
        if (set == oracle.policy.obs_set && v < oracle.value - 1e-9) violated = true;
    };
    learner.run(2000, env);
    violating_runs += violated ? 1 : 0;
  }
  EXPECT_LE(violating_runs, static_cast<int>(0.1 * runs));
}

TEST(SimOos, LearnsTheOracleSetOnAnEasyInstance) {
  // one decisive observation, cheap to buy
  StateSpace space({{0, 1}, {0, 1}});
  const std::vector<double> joint(4, 0.25);
  // action follows x0; x1 is noise
  const std::vector<double> reward = {0.9, 0.1, 0.9, 0.1, 0.1, 0.9, 0.1, 0.9};
  GenerativeModel m(space, joint, 2, reward, {0.05, 0.05});
  const RunTrace trace = run_sim_oos(50000, m, {1, 1.0, 0.1}, 1);
  ObservationSet best;
  best.insert(0);
  std::size_t hits = 0;
  for (std::size_t k = 45000; k < 50000; ++k) hits += trace.steps[k].obs_set == best ? 1 : 0;
  EXPECT_GE(hits, 4500u);
}

}  // namespace
}  // namespace oos
