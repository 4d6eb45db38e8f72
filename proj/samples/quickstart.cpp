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

// Build the medical surrogate, print the oracle values, then run the two
// learners and the observe-everything baseline for a short horizon.

#include <cstdio>

#include "oos/oos.hpp"

int main() {
  using namespace oos;
  MedicalSpec spec;
  spec.cost = 4.0;
  const GenerativeModel model = make_synthetic_medical(spec);
  const int budget = 3;
  const double beta = 100.0;

  const auto sim = oracle_sim(model, budget, beta);
  const auto seq = oracle_seq(model, budget, beta);
  std::printf("oracle_sim %.3f with I* = %s\n", sim.value, to_string(sim.policy.obs_set).c_str());
  std::printf("oracle_seq %.3f\n", seq.value);

  const std::uint64_t horizon = 50000;
  const RunTrace a = run_sim_oos(horizon, model, {budget, beta, 0.1}, 1);
  const RunTrace b = run_seq_oos(horizon, model, {budget, beta, 0.1}, 1);
  const RunTrace c = contextual_ucb_run(horizon, model, beta, 1);
  std::printf("sim-oos         gain %8.3f  regret %10.1f  rounds %llu\n", compute_gain(a, beta),
              compute_regret(a, sim.value, beta), static_cast<unsigned long long>(a.rounds));
  std::printf("seq-oos         gain %8.3f  regret %10.1f  rounds %llu\n", compute_gain(b, beta),
              compute_regret(b, seq.value, beta), static_cast<unsigned long long>(b.rounds));
  std::printf("contextual-ucb  gain %8.3f  regret %10.1f\n", compute_gain(c, beta), compute_regret(c, sim.value, beta));
}
