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

// A two-test instance where the first result decides whether the second is
// worth buying. Prints the exact sequential policy, then the plan Seq-OOS
// holds after some learning.

#include <cstdio>

#include "oos/oos.hpp"

namespace {

void print_policy(const oos::StateSpace& space, const oos::SeqPolicy& policy) {
  for (oos::ObservationSet set : oos::enumerate_obs_sets(space.num_observations(), policy.budget()))
    for (const auto& psi : oos::enumerate_partials(space, set)) {
      const auto& d = policy.at(psi);
      if (d.observation == oos::kStop)
        std::printf("  %-8s stop, play action %d\n", oos::to_string(psi).c_str(), d.action);
      else
        std::printf("  %-8s observe %d\n", oos::to_string(psi).c_str(), d.observation);
    }
}

}  // namespace

int main() {
  using namespace oos;
  StateSpace space({{0, 1}, {0, 1}});
  // x0 = 0: both actions pay 0.5; x0 = 1: the right action follows x1
  const std::vector<double> reward = {0.5, 0.5, 0.5, 0.5, 1.0, 0.0, 0.0, 1.0};
  GenerativeModel model(space, std::vector<double>(4, 0.25), 2, reward, {0.05, 0.2});

  const auto exact = oracle_seq(model, 2, 1.0);
  std::printf("oracle_seq %.4f, oracle_sim %.4f\n", exact.value, oracle_sim(model, 2, 1.0).value);
  print_policy(space, exact.policy);

  Environment env(model, 1);
  SeqOos learner(ProblemShape::of(model), {2, 1.0, 0.1});
  const RunTrace trace = learner.run(200000, env);
  std::printf("after %zu steps and %llu rounds, root value %.4f, gain %.4f\n", trace.size(),
              static_cast<unsigned long long>(learner.rounds()), learner.plan().root_value(),
              compute_gain(trace, 1.0));
  print_policy(space, learner.plan().policy);
}
