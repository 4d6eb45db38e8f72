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

// Command line front end: run, oracle, validate, export-model.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "oos/config.hpp"
#include "oos/experiment.hpp"
#include "oos/model_io.hpp"
#include "oos/oracle.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& out_dir, bool quiet) {
  const oos::ExperimentConfig cfg = oos::load_config(config_path);
  const unsigned workers = oos::workers_from_env();
  const oos::ExperimentResult result = oos::run_experiment(cfg, workers);
  oos::write_outputs(result, cfg, out_dir);
  if (!quiet) {
    for (const auto& r : result.runs) {
      std::cout << oos::to_string(r.algorithm) << " cost_point=" << r.cost_point << " seed=" << r.seed;
      if (r.status == "ok")
        std::cout << " gain=" << r.gain << " regret=" << r.regret << " rounds=" << r.rounds << '\n';
      else
        std::cout << " status=" << r.status << '\n';
    }
    std::cout << "wrote " << out_dir << '\n';
  }
  return 0;
}

int cmd_oracle(const std::string& config_path) {
  const oos::ExperimentConfig cfg = oos::load_config(config_path);
  std::cout << "cost_point,cost,oracle_sim,oracle_sim_set,oracle_seq\n";
  const auto points = cfg.cost_points();
  for (std::size_t c = 0; c < points.size(); ++c) {
    const auto model = cfg.model->with_costs(points[c]);
    const auto sim = oos::oracle_sim(model, cfg.budget, cfg.beta);
    const auto seq = oos::oracle_seq(model, cfg.budget, cfg.beta);
    std::string set = oos::to_string(sim.policy.obs_set);
    for (char& ch : set)
      if (ch == ',') ch = ' ';
    std::cout << c << ',' << oos::detail::uniform_cost_field(points[c]) << ',' << oos::format_double(sim.value)
              << ',' << set << ',' << oos::format_double(seq.value) << '\n';
  }
  return 0;
}

int cmd_validate(const std::string& config_path) {
  const oos::ExperimentConfig cfg = oos::load_config(config_path);
  std::cout << config_path << ": ok (" << cfg.model_label << ", D=" << cfg.model->num_observations()
            << ", A=" << cfg.model->num_actions() << ", " << cfg.algorithms.size() << " algorithms, "
            << cfg.cost_points().size() << " cost points, " << cfg.seeds.size() << " seeds)\n";
  return 0;
}

int cmd_export(const std::string& config_path, const std::string& out_path) {
  const oos::ExperimentConfig cfg = oos::load_config(config_path);
  oos::save_model(cfg.model->with_costs(cfg.cost_points().front()), out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contextual bandits with costly observations: simulation harness"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string model_out;
  bool quiet = false;

  auto* run = app.add_subcommand("run", "run every (algorithm, cost, seed) job and write CSV files");
  run->add_option("config", config_path, "YAML experiment config")->required()->check(CLI::ExistingFile);
  run->add_option("outdir", out_dir, "output directory")->required();
  run->add_flag("-q,--quiet", quiet, "no per-run summary on stdout");

  auto* oracle = app.add_subcommand("oracle", "print oracle_sim and oracle_seq values per cost point");
  oracle->add_option("config", config_path, "YAML experiment config")->required()->check(CLI::ExistingFile);

  auto* validate = app.add_subcommand("validate", "check a config without running it");
  validate->add_option("config", config_path, "YAML experiment config")->required()->check(CLI::ExistingFile);

  auto* exporter = app.add_subcommand("export-model", "write the configured model (first cost point) as JSON");
  exporter->add_option("config", config_path, "YAML experiment config")->required()->check(CLI::ExistingFile);
  exporter->add_option("out", model_out, "JSON output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config_path, out_dir, quiet);
    if (*oracle) return cmd_oracle(config_path);
    if (*validate) return cmd_validate(config_path);
    if (*exporter) return cmd_export(config_path, model_out);
  } catch (const oos::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
