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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "oos/baselines.hpp"
#include "oos/config.hpp"
#include "oos/exact_estimates.hpp"
#include "oos/experiment.hpp"
#include "oos/l1_solver.hpp"
#include "oos/oracle.hpp"
#include "oos/seq_oos.hpp"
#include "oos/sim_oos.hpp"
#include "oos/synthetic.hpp"
#include "support/oracles.hpp"

namespace {

using namespace oos;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt2(const char* f, double a, double b) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

// ---------------------------------------------------------------- 1

Outcome inner_solver_equivalence() {
  const auto start = Clock::now();
  Rng rng(20261018);
  double worst_lattice = 0.0;
  double worst_vertex = 0.0;
  double worst_feas = 0.0;
  int below_lattice = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto pr = testing::random_l1_problem(rng, 5);
    const auto s = l1_linear_max(pr.p_hat, pr.values, pr.radius);
    const double lattice = testing::lattice_max(pr);
    const double vertex = testing::vertex_lp_max(pr);
    worst_lattice = std::max(worst_lattice, std::abs(s.value - lattice));
    worst_vertex = std::max(worst_vertex, std::abs(s.value - vertex));
    if (s.value < lattice - 1e-12) ++below_lattice;
    double neg = 0.0;
    for (double p : s.p_tilde) neg = std::max(neg, -p);
    const double sum_err = std::abs(std::accumulate(s.p_tilde.begin(), s.p_tilde.end(), 0.0) - 1.0);
    const double ball_err = std::max(0.0, testing::l1_distance(s.p_tilde, pr.p_hat) - pr.radius);
    worst_feas = std::max({worst_feas, neg, sum_err, ball_err});
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  Outcome o;
  o.pass = worst_lattice <= 2e-3 && below_lattice == 0 && worst_feas <= 1e-12 && worst_vertex <= 1e-9 && secs < 5.0;
  o.detail = "max |greedy-lattice| " + fmt("%.2e", worst_lattice) + ", max |greedy-vertexLP| " +
             fmt("%.2e", worst_vertex) + ", feasibility " + fmt("%.1e", worst_feas) + ", " + fmt("%.2f s", secs) +
             " (limits 2e-3, 1e-9, 1e-12, 5 s)";
  return o;
}

// ---------------------------------------------------------------- 2

Outcome oracle_by_enumeration() {
  const auto start = Clock::now();
  Rng rng(777);
  double worst = 0.0;
  double worst_direct = 0.0;
  double worst_dominance = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    RandomModelSpec spec;
    spec.seed = 1000 + static_cast<std::uint64_t>(trial);
    spec.num_observations = 1 + static_cast<int>(uniform_index(rng, 3));
    spec.alphabet_size = 1 + static_cast<int>(uniform_index(rng, 2));
    spec.num_actions = 1 + static_cast<int>(uniform_index(rng, 3));
    spec.max_cost = 0.3;
    const auto m = make_random_model(spec);
    const int budget = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(std::min(2, spec.num_observations) + 1)));
    const double beta = 1.0;
    const auto sim = oracle_sim(m, budget, beta);
    double best = -1e300;
    for (const auto& p : enumerate_sim_policies(m.space(), m.num_actions(), budget))
      best = std::max(best, policy_gain_sim(m, p, beta));
    worst = std::max(worst, std::abs(best - sim.value));
    worst_direct = std::max(worst_direct, std::abs(testing::enumerate_best_sim_policy(m, budget, beta).value - sim.value));
    worst_dominance = std::max(worst_dominance, sim.value - oracle_seq(m, budget, beta).value);
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  Outcome o;
  o.pass = worst <= 1e-9 && worst_direct <= 1e-9 && worst_dominance <= 1e-12 && secs < 60.0;
  o.detail = "max |oracle_sim - best enumerated| " + fmt("%.2e", worst) + " (direct sums " + fmt("%.2e", worst_direct) +
             "), max (sim - seq) " + fmt("%.2e", worst_dominance) + ", " + fmt("%.2f s", secs);
  return o;
}

// ---------------------------------------------------------------- 3, 4

GenerativeModel witness_model() {
  RandomModelSpec spec;  // generator defaults: seed 1, max cost 0.2
  spec.num_observations = 3;
  spec.alphabet_size = 2;
  spec.num_actions = 2;
  return make_random_model(spec);
}

double window_regret(const RunTrace& trace, double v, double beta, std::size_t from, std::size_t to) {
  double s = 0.0;
  for (std::size_t k = from; k < to; ++k) s += v - (beta * trace.steps[k].reward - trace.steps[k].cost);
  return s;
}

struct Witness {
  double early = 0.0;  // mean per-step regret over (0, 0.1T]
  double late = 0.0;   // mean per-step regret over (0.9T, T]
  double total = 0.0;  // mean cumulative regret at T
  double uniform_total = 0.0;
};

template <class Run>
Witness witness(Run run, double oracle_value, bool with_uniform) {
  const auto m = witness_model();
  const std::uint64_t horizon = 100000;
  const int seeds = 20;
  Witness w;
  for (int seed = 1; seed <= seeds; ++seed) {
    const RunTrace trace = run(m, horizon, static_cast<std::uint64_t>(seed));
    w.early += window_regret(trace, oracle_value, 1.0, 0, horizon / 10) / (horizon / 10.0);
    w.late += window_regret(trace, oracle_value, 1.0, horizon - horizon / 10, horizon) / (horizon / 10.0);
    w.total += compute_regret(trace, oracle_value, 1.0);
    if (with_uniform)
      w.uniform_total += compute_regret(uniform_random_run(horizon, m, 2, static_cast<std::uint64_t>(seed)),
                                        oracle_value, 1.0);
  }
  w.early /= seeds;
  w.late /= seeds;
  w.total /= seeds;
  w.uniform_total /= seeds;
  return w;
}

Outcome sim_oos_witness() {
  const auto start = Clock::now();
  const auto m = witness_model();
  const double v = oracle_sim(m, 2, 1.0).value;
  const Witness w = witness(
      [](const GenerativeModel& model, std::uint64_t t, std::uint64_t seed) {
        return run_sim_oos(t, model, {2, 1.0, 0.1}, seed);
      },
      v, true);
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  Outcome o;
  o.pass = w.late <= 0.5 * w.early && w.total < 0.5 * w.uniform_total && secs < 600.0;
  o.detail = "late/early per-step regret " + fmt2("%.4f/%.4f", w.late, w.early) + " = " +
             fmt("%.3f (limit 0.5)", w.late / w.early) + ", cumulative vs uniform " +
             fmt2("%.0f/%.0f", w.total, w.uniform_total) + " = " + fmt("%.3f (limit 0.5)", w.total / w.uniform_total) +
             ", " + fmt("%.1f s", secs);
  return o;
}

Outcome seq_oos_witness() {
  const auto start = Clock::now();
  const auto m = witness_model();
  const double v = oracle_seq(m, 2, 1.0).value;
  const Witness w = witness(
      [](const GenerativeModel& model, std::uint64_t t, std::uint64_t seed) {
        return run_seq_oos(t, model, {2, 1.0, 0.1}, seed);
      },
      v, false);
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  Outcome o;
  o.pass = w.late <= 0.5 * w.early && secs < 900.0;
  o.detail = "late/early per-step regret " + fmt2("%.4f/%.4f", w.late, w.early) + " = " +
             fmt("%.3f (limit 0.5)", w.late / w.early) + ", " + fmt("%.1f s", secs);
  return o;
}

// ---------------------------------------------------------------- 5

Outcome confidence_coverage() {
  const auto start = Clock::now();
  const auto m = witness_model();
  const StateSpace& space = m.space();
  const int d = space.num_observations();
  const int budget = d;  // every observation may be bought
  const auto params = make_confidence_params(space, m.num_actions(), budget, 0.1);
  const std::uint64_t horizon = 100000;
  const ObservationSet all = ObservationSet::full(d);
  const auto sets = enumerate_obs_sets(d, budget);
  int covered = 0;
  const int reps = 200;
  for (int rep = 1; rep <= reps; ++rep) {
    Environment env(m, static_cast<std::uint64_t>(rep));
    Rng choice = make_stream(static_cast<std::uint64_t>(rep), 3);
    CounterStore counters(space, m.num_actions());
    for (std::uint64_t t = 0; t < horizon; ++t) {
      const StateVector phi = env.draw_state();
      const auto a = static_cast<Action>(uniform_index(choice, static_cast<std::uint64_t>(m.num_actions())));
      counters.record_sim_step(all, as_partial(phi), a, env.draw_reward(a, phi));
    }
    bool ok = true;
    for (ObservationSet set : sets) {
      const std::uint64_t n = counters.obs_set_count(set);
      double l1 = 0.0;
      for (const PartialState& psi : enumerate_partials(space, set))
        l1 += std::abs(counters.prob_estimate(psi).value - m.marginal_prob(psi));
      if (l1 > conf2_sim(n, horizon, params)) ok = false;
    }
    for (const PartialState& psi : enumerate_partials(space, all))
      for (Action a = 0; a < m.num_actions(); ++a) {
        const Estimate e = counters.reward_estimate(a, psi);
        if (e.count == 0) continue;
        if (std::abs(e.value - m.marginal_reward(a, psi)) > conf1(e.count, horizon, params)) ok = false;
      }
    covered += ok ? 1 : 0;
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  Outcome o;
  o.pass = covered >= static_cast<int>(std::ceil(0.9 * reps));
  o.detail = std::to_string(covered) + "/" + std::to_string(reps) +
             " repetitions with every L1 and reward interval holding (need >= 180), " + fmt("%.1f s", secs);
  return o;
}

// ---------------------------------------------------------------- 6

int counter_violations(const CounterStore& c) {
  const StateSpace& space = c.space();
  int bad = 0;
  for (const auto& [mask, n] : c.obs_set_counts()) {
    const ObservationSet set(mask);
    std::uint64_t total = 0;
    for (const auto& psi : enumerate_partials(space, set)) total += c.obs_partial_count(psi);
    if (total != n) ++bad;
    for (ObservationSet sup : enumerate_obs_sets(space.num_observations(), space.num_observations()))
      if (set.is_subset_of(sup) && c.obs_set_count(sup) > n) ++bad;
  }
  for (const auto& [key, n] : c.transition_pair_counts()) {
    const auto [code, i] = c.split_pair_key(key);
    const PartialState from = space.decode(code);
    std::uint64_t total = 0;
    for (const auto& to : extensions(space, from, i)) total += c.transition_count(from, i, to);
    if (total != n) ++bad;
  }
  std::uint64_t pair_total = 0;
  std::uint64_t trans_total = 0;
  for (const auto& [key, n] : c.transition_pair_counts()) pair_total += n;
  for (const auto& [key, n] : c.transition_counts()) trans_total += n;
  if (pair_total != trans_total) ++bad;
  return bad;
}

Outcome counter_invariants() {
  const auto start = Clock::now();
  int bad = 0;
  // raw fuzz over a mixed-alphabet space
  const StateSpace space({{0, 1, 2}, {0, 1}, {0, 1, 2, 3}, {0, 1}});
  Rng rng(99);
  CounterStore c(space, 3);
  std::uint64_t phases = 0;
  for (int step = 0; step < 10000; ++step) {
    StateVector phi(4);
    for (int i = 0; i < 4; ++i) phi[i] = static_cast<Symbol>(uniform_index(rng, static_cast<std::uint64_t>(space.alphabet_size(i))));
    if (uniform01(rng) < 0.5) {
      ObservationSet set;
      for (int i = 0; i < 4; ++i)
        if (uniform01(rng) < 0.5) set.insert(i);
      c.record_sim_step(set, restrict_to(phi, set), static_cast<Action>(uniform_index(rng, 3)), uniform01(rng));
    } else {
      PartialState psi = space.empty_partial();
      const int depth = static_cast<int>(uniform_index(rng, 4));
      std::vector<ObservationId> ids = {0, 1, 2, 3};
      for (int l = 0; l < depth; ++l) {
        const auto pick = uniform_index(rng, ids.size() - static_cast<std::size_t>(l));
        std::swap(ids[l], ids[l + pick]);
        PartialState next = extend(psi, ids[l], phi[ids[l]]);
        c.record_seq_phase(psi, ids[l], next);
        ++phases;
        psi = std::move(next);
      }
      c.record_seq_phase(psi, kStop, psi);
      c.record_reward(static_cast<Action>(uniform_index(rng, 3)), psi, uniform01(rng));
    }
  }
  bad += counter_violations(c);
  std::uint64_t pair_total = 0;
  for (const auto& [key, n] : c.transition_pair_counts()) pair_total += n;
  if (pair_total != phases) ++bad;

  // counters left behind by the learners themselves
  const auto m = make_synthetic_medical({});
  Environment env_sim(m, 5);
  SimOos sim(ProblemShape::of(m), {3, 100.0, 0.1});
  sim.run(10000, env_sim);
  bad += counter_violations(sim.counters());
  Environment env_seq(m, 5);
  SeqOos seq(ProblemShape::of(m), {3, 100.0, 0.1});
  seq.run(10000, env_seq);
  bad += counter_violations(seq.counters());

  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  Outcome o;
  o.pass = bad == 0;
  o.detail = std::to_string(bad) + " violations after 10^4-step fuzz and learner runs, " + fmt("%.1f s", secs);
  return o;
}

// ---------------------------------------------------------------- 7, 8

std::filesystem::path replication_config() { return std::filesystem::path(OOS_SOURCE_DIR) / "configs/replication.yaml"; }

struct Replication {
  ExperimentConfig config;
  ExperimentResult result;
  unsigned workers = 1;
  double seconds = 0.0;
};

const Replication& replication() {
  static const Replication rep = [] {
    Replication r;
    r.config = load_config(replication_config());
    const auto start = Clock::now();
    // at least 4 so the determinism check always compares against a threaded run
    r.workers = std::max(4u, workers_from_env());
    r.result = run_experiment(r.config, r.workers);
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return r;
  }();
  return rep;
}

Outcome qualitative_replication() {
  const Replication& rep = replication();
  const auto& cfg = rep.config;
  const auto& res = rep.result;
  const std::size_t points = res.oracles.size();
  std::map<Algorithm, std::vector<double>> mean;
  std::map<std::pair<Algorithm, std::size_t>, std::map<std::uint64_t, double>> gain;
  for (const auto& r : res.runs) {
    if (r.status != "ok") continue;
    auto& v = mean[r.algorithm];
    v.resize(points, 0.0);
    v[r.cost_point] += r.gain / static_cast<double>(cfg.seeds.size());
    gain[{r.algorithm, r.cost_point}][r.seed] = r.gain;
  }
  std::string detail;
  bool monotone = true;
  for (Algorithm a : {Algorithm::kSimOos, Algorithm::kSeqOos, Algorithm::kContextualUcb}) {
    const auto& v = mean.at(a);
    detail += to_string(a) + " [";
    for (std::size_t c = 0; c < points; ++c) {
      detail += (c ? " " : "") + fmt("%.2f", v[c]);
      if (c > 0 && v[c] > v[c - 1]) monotone = false;
    }
    detail += "]; ";
  }
  // highest cost point where the oracle set leaves something unobserved
  std::size_t target = points;
  for (std::size_t c = 0; c < points; ++c)
    if (res.oracles[c].sim.policy.obs_set.size() < cfg.model->num_observations()) target = c;
  bool beats = target < points;
  int sim_wins = 0;
  int seq_wins = 0;
  if (beats) {
    for (std::uint64_t seed : cfg.seeds) {
      const double ucb = gain.at({Algorithm::kContextualUcb, target}).at(seed);
      sim_wins += gain.at({Algorithm::kSimOos, target}).at(seed) > ucb ? 1 : 0;
      seq_wins += gain.at({Algorithm::kSeqOos, target}).at(seed) > ucb ? 1 : 0;
    }
    beats = sim_wins == static_cast<int>(cfg.seeds.size()) && seq_wins == static_cast<int>(cfg.seeds.size());
  }
  Outcome o;
  o.pass = monotone && beats && rep.seconds < 1800.0;
  o.detail = "mean Gain by cost " + detail + "(a) non-increasing: " + (monotone ? "yes" : "no") +
             "; (b) at cost point " + std::to_string(target) + " (oracle set " +
             (target < points ? to_string(res.oracles[target].sim.policy.obs_set) : std::string("-")) +
             ") seeds where sim-oos/seq-oos beat contextual-ucb: " + std::to_string(sim_wins) + "/" +
             std::to_string(seq_wins) + " of " + std::to_string(cfg.seeds.size()) + "; " + fmt("%.1f s", rep.seconds);
  return o;
}

Outcome determinism() {
  const Replication& rep = replication();
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() / "oos_acceptance_determinism";
  fs::remove_all(base);
  const auto start = Clock::now();
  write_outputs(rep.result, rep.config, base / "first");
  const auto again = run_experiment(load_config(replication_config()), 1);
  write_outputs(again, rep.config, base / "second");
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string a = slurp(base / "first/results.csv");
  const std::string b = slurp(base / "second/results.csv");
  Outcome o;
  o.pass = !a.empty() && a == b;
  o.detail = std::string("results.csv ") + (a == b ? "byte-identical" : "differs") + " (" + std::to_string(a.size()) +
             " bytes; second run with 1 worker vs " + std::to_string(rep.workers) + "), " + fmt("%.1f s", secs);
  return o;
}

// ---------------------------------------------------------------- 9

Outcome degenerate_radius_reduction() {
  const auto start = Clock::now();
  Rng rng(4242);
  int mismatches = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    RandomModelSpec spec;
    spec.seed = 500 + static_cast<std::uint64_t>(trial);
    spec.num_observations = 2 + static_cast<int>(uniform_index(rng, 2));
    spec.alphabet_size = 2 + static_cast<int>(uniform_index(rng, 2));
    spec.num_actions = 2 + static_cast<int>(uniform_index(rng, 2));
    const auto m = make_random_model(spec);
    const int budget = 1 + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(spec.num_observations)));
    const double beta = 1.0 + static_cast<double>(uniform_index(rng, 3));
    const ExactEstimates exact(m);
    const auto shape = ProblemShape::of(m);

    const auto plan = plan_sim_policy(exact, ZeroRadii{}, shape, budget, beta, 1);
    const auto sim = oracle_sim(m, budget, beta);
    if (!(plan.policy.obs_set == sim.policy.obs_set) || plan.policy.actions != sim.policy.actions) ++mismatches;
    worst = std::max(worst, std::abs(plan.value - sim.value));

    const auto odp = odp_plan(exact, ZeroRadii{}, shape, budget, beta, 1);
    const auto seq = oracle_seq(m, budget, beta);
    worst = std::max(worst, std::abs(odp.root_value() - seq.value));
    for (const auto& [code, decision] : seq.policy.decisions()) {
      if (!(m.marginal_prob_code(code) > 0.0)) continue;
      const PartialState psi = m.space().decode(code);
      const SeqDecision& got = odp.policy.at(psi);
      if (got.observation != decision.observation) ++mismatches;
      if (decision.observation == kStop && got.action != decision.action) ++mismatches;
    }
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  Outcome o;
  o.pass = mismatches == 0 && worst <= 1e-9;
  o.detail = std::to_string(mismatches) + " argmax mismatches over 20 models, max value gap " + fmt("%.1e", worst) +
             ", " + fmt("%.2f s", secs);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"inner-solver oracle equivalence", inner_solver_equivalence},
      {"oracle correctness by enumeration", oracle_by_enumeration},
      {"sublinear-regret witness, sim-oos", sim_oos_witness},
      {"sublinear-regret witness, seq-oos", seq_oos_witness},
      {"confidence coverage", confidence_coverage},
      {"counter invariants", counter_invariants},
      {"qualitative cost-sweep replication", qualitative_replication},
      {"determinism of results.csv", determinism},
      {"degenerate-radius reduction", degenerate_radius_reduction},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
