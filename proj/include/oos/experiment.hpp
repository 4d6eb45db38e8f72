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

// Multi-run experiment execution and CSV output.
//
// results.csv  algorithm,cost_point,cost,seed,gain,regret,rounds,oracle_value,status
// curves.csv   algorithm,cost_point,cost,seed,t,cumulative_regret,cumulative_net
// steps.csv    algorithm,cost_point,cost,seed,t,obs_set,step_cost,action,reward
// oracle.csv   cost_point,cost,oracle_sim,oracle_sim_set,oracle_seq
// timing.csv   algorithm,cost_point,seed,wall_seconds
//
// `cost` is the uniform per-observation cost of the cost point and is left
// empty when costs differ across observations. Doubles carry 17 significant
// digits. Everything except timing.csv is a pure function of the config.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "oos/baselines.hpp"
#include "oos/config.hpp"
#include "oos/model.hpp"
#include "oos/oracle.hpp"
#include "oos/seq_oos.hpp"
#include "oos/sim_oos.hpp"
#include "oos/trace.hpp"

namespace oos {

inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

/// Up to `max_points` log-spaced 1-based step indices ending at T.
inline std::vector<std::uint64_t> log_checkpoints(std::uint64_t horizon, std::uint64_t max_points) {
  std::vector<std::uint64_t> out;
  if (max_points == 0 || horizon == 0) return out;
  if (horizon <= max_points) {
    for (std::uint64_t t = 1; t <= horizon; ++t) out.push_back(t);
    return out;
  }
  const double log_t = std::log(static_cast<double>(horizon));
  for (std::uint64_t k = 0; k < max_points; ++k) {
    const double x = max_points == 1 ? log_t : log_t * static_cast<double>(k) / static_cast<double>(max_points - 1);
    auto t = static_cast<std::uint64_t>(std::llround(std::exp(x)));
    t = std::clamp<std::uint64_t>(t, 1, horizon);
    if (out.empty() || t > out.back()) out.push_back(t);
  }
  if (out.back() != horizon) out.back() = horizon;
  return out;
}

struct CostPointOracle {
  std::vector<double> costs;
  SimOracleResult sim;
  double seq_value = 0.0;
};

struct CurvePoint {
  std::uint64_t t = 0;
  double cumulative_regret = 0.0;
  double cumulative_net = 0.0;
};

struct RunResult {
  Algorithm algorithm = Algorithm::kSimOos;
  std::size_t cost_point = 0;
  std::uint64_t seed = 0;
  std::string status = "ok";
  double gain = 0.0;
  double regret = 0.0;
  std::uint64_t rounds = 0;
  double oracle_value = 0.0;
  double wall_seconds = 0.0;
  std::vector<CurvePoint> curve;
  RunTrace trace;  // kept only when steps are written
};

struct ExperimentResult {
  std::vector<CostPointOracle> oracles;
  std::vector<RunResult> runs;  // ordered by (algorithm, cost point, seed)
};

/// Worker count from OOS_WORKERS, else the available parallelism.
inline unsigned workers_from_env() {
  if (const char* env = std::getenv("OOS_WORKERS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n >= 1) return static_cast<unsigned>(n);
    throw std::invalid_argument("OOS_WORKERS must be a positive integer");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

inline RunTrace run_algorithm(Algorithm algorithm, const GenerativeModel& model, const ExperimentConfig& config,
                              std::uint64_t seed) {
  switch (algorithm) {
    case Algorithm::kSimOos: return run_sim_oos(config.horizon, model, {config.budget, config.beta, config.delta}, seed);
    case Algorithm::kSeqOos: return run_seq_oos(config.horizon, model, {config.budget, config.beta, config.delta}, seed);
    case Algorithm::kContextualUcb: return contextual_ucb_run(config.horizon, model, config.beta, seed);
    case Algorithm::kMetaUcb: return meta_ucb_run(config.horizon, model, config.beta, config.budget, seed);
  }
  throw std::logic_error("run_algorithm: unknown algorithm");
}

inline ExperimentResult run_experiment(const ExperimentConfig& config, unsigned workers = 1) {
  if (!config.model) throw std::invalid_argument("run_experiment: config has no model");
  ExperimentResult result;
  std::vector<GenerativeModel> models;
  for (const auto& costs : config.cost_points()) {
    models.push_back(config.model->with_costs(costs));
    CostPointOracle o;
    o.costs = costs;
    o.sim = oracle_sim(models.back(), config.budget, config.beta);
    o.seq_value = oracle_seq(models.back(), config.budget, config.beta).value;
    result.oracles.push_back(std::move(o));
  }

  for (Algorithm a : config.algorithms)
    for (std::size_t c = 0; c < models.size(); ++c)
      for (std::uint64_t seed : config.seeds) {
        RunResult r;
        r.algorithm = a;
        r.cost_point = c;
        r.seed = seed;
        result.runs.push_back(std::move(r));
      }

  const auto checkpoints = log_checkpoints(config.horizon, config.curve_points);
  auto execute = [&](RunResult& r) {
    const GenerativeModel& model = models[r.cost_point];
    const CostPointOracle& oracle = result.oracles[r.cost_point];
    r.oracle_value = r.algorithm == Algorithm::kSeqOos ? oracle.seq_value : oracle.sim.value;
    const auto start = std::chrono::steady_clock::now();
    RunTrace trace;
    try {
      trace = run_algorithm(r.algorithm, model, config, r.seed);
    } catch (const PolicySpaceOverflow&) {
      r.status = "policy-space-overflow";
      return;
    }
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.gain = compute_gain(trace, config.beta);
    r.regret = compute_regret(trace, r.oracle_value, config.beta);
    r.rounds = trace.rounds;
    double regret = 0.0;
    double net = 0.0;
    std::size_t next = 0;
    for (std::size_t k = 0; k < trace.steps.size() && next < checkpoints.size(); ++k) {
      const StepRecord& s = trace.steps[k];
      const double v = config.beta * s.reward - s.cost;
      net += v;
      regret += r.oracle_value - v;
      if (checkpoints[next] == k + 1) {
        r.curve.push_back({k + 1, regret, net});
        ++next;
      }
    }
    if (config.write_steps) r.trace = std::move(trace);
  };

  std::atomic<std::size_t> next_job{0};
  std::vector<std::exception_ptr> errors(result.runs.size());
  auto worker = [&] {
    for (std::size_t j = next_job++; j < result.runs.size(); j = next_job++) {
      try {
        execute(result.runs[j]);
      } catch (...) {
        errors[j] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(result.runs.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < n; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return result;
}

namespace detail {

inline std::string uniform_cost_field(const std::vector<double>& costs) {
  if (costs.empty()) return format_double(0.0);
  for (double c : costs)
    if (c != costs.front()) return "";
  return format_double(costs.front());
}

}  // namespace detail

inline void write_results_csv(const ExperimentResult& result, std::ostream& out) {
  out << "algorithm,cost_point,cost,seed,gain,regret,rounds,oracle_value,status\n";
  for (const RunResult& r : result.runs) {
    out << to_string(r.algorithm) << ',' << r.cost_point << ','
        << detail::uniform_cost_field(result.oracles[r.cost_point].costs) << ',' << r.seed << ',';
    if (r.status == "ok")
      out << format_double(r.gain) << ',' << format_double(r.regret) << ',' << r.rounds << ',';
    else
      out << ",,,";
    out << format_double(r.oracle_value) << ',' << r.status << '\n';
  }
}

inline void write_curves_csv(const ExperimentResult& result, std::ostream& out) {
  out << "algorithm,cost_point,cost,seed,t,cumulative_regret,cumulative_net\n";
  for (const RunResult& r : result.runs) {
    const std::string prefix = to_string(r.algorithm) + ',' + std::to_string(r.cost_point) + ',' +
                               detail::uniform_cost_field(result.oracles[r.cost_point].costs) + ',' +
                               std::to_string(r.seed) + ',';
    for (const CurvePoint& p : r.curve)
      out << prefix << p.t << ',' << format_double(p.cumulative_regret) << ',' << format_double(p.cumulative_net)
          << '\n';
  }
}

inline void write_steps_csv(const ExperimentResult& result, std::ostream& out) {
  out << "algorithm,cost_point,cost,seed,t,obs_set,step_cost,action,reward\n";
  for (const RunResult& r : result.runs) {
    const std::string prefix = to_string(r.algorithm) + ',' + std::to_string(r.cost_point) + ',' +
                               detail::uniform_cost_field(result.oracles[r.cost_point].costs) + ',' +
                               std::to_string(r.seed) + ',';
    for (const StepRecord& s : r.trace.steps) {
      std::string set = to_string(s.obs_set);
      std::replace(set.begin(), set.end(), ',', ' ');
      out << prefix << s.t << ',' << set << ',' << format_double(s.cost) << ',' << s.action << ','
          << format_double(s.reward) << '\n';
    }
  }
}

inline void write_oracle_csv(const ExperimentResult& result, std::ostream& out) {
  out << "cost_point,cost,oracle_sim,oracle_sim_set,oracle_seq\n";
  for (std::size_t c = 0; c < result.oracles.size(); ++c) {
    const CostPointOracle& o = result.oracles[c];
    std::string set = to_string(o.sim.policy.obs_set);
    std::replace(set.begin(), set.end(), ',', ' ');
    out << c << ',' << detail::uniform_cost_field(o.costs) << ',' << format_double(o.sim.value) << ',' << set << ','
        << format_double(o.seq_value) << '\n';
  }
}

inline void write_timing_csv(const ExperimentResult& result, std::ostream& out) {
  out << "algorithm,cost_point,seed,wall_seconds\n";
  for (const RunResult& r : result.runs)
    out << to_string(r.algorithm) << ',' << r.cost_point << ',' << r.seed << ',' << format_double(r.wall_seconds)
        << '\n';
}

/// Write every output file of an experiment into `dir` (created if needed).
inline void write_outputs(const ExperimentResult& result, const ExperimentConfig& config,
                          const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    return out;
  };
  {
    auto out = open("results.csv");
    write_results_csv(result, out);
  }
  {
    auto out = open("oracle.csv");
    write_oracle_csv(result, out);
  }
  {
    auto out = open("timing.csv");
    write_timing_csv(result, out);
  }
  if (config.curve_points > 0) {
    auto out = open("curves.csv");
    write_curves_csv(result, out);
  }
  if (config.write_steps) {
    auto out = open("steps.csv");
    write_steps_csv(result, out);
  }
}

/// One parsed results.csv row; numeric fields are empty-safe.
struct ResultRow {
  std::string algorithm;
  std::size_t cost_point = 0;
  std::string cost;
  std::uint64_t seed = 0;
  double gain = 0.0;
  double regret = 0.0;
  std::uint64_t rounds = 0;
  double oracle_value = 0.0;
  std::string status;
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

inline std::vector<ResultRow> read_results_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "algorithm,cost_point,cost,seed,gain,regret,rounds,oracle_value,status")
    throw std::invalid_argument("results.csv: unexpected header");
  auto num = [](const std::string& s) { return s.empty() ? 0.0 : std::stod(s); };
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 9) throw std::invalid_argument("results.csv: expected 9 fields in '" + line + "'");
    ResultRow r;
    r.algorithm = f[0];
    r.cost_point = std::stoull(f[1]);
    r.cost = f[2];
    r.seed = std::stoull(f[3]);
    r.gain = num(f[4]);
    r.regret = num(f[5]);
    r.rounds = f[6].empty() ? 0 : std::stoull(f[6]);
    r.oracle_value = num(f[7]);
    r.status = f[8];
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace oos
