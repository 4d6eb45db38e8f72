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

// Experiment configuration read from YAML. Schema (all keys optional unless
// marked):
//
//   model:                       required; exactly one of synthetic/file/inline
//     synthetic: medical         or "random"
//     seed: 7
//     alphabet_sizes: [3, 2, 3, 3]      medical only
//     correlation: 0.7                  medical only
//     sharpness: 3.0                    medical only
//     observations: 3                   random only
//     alphabet_size: 2                  random only
//     max_cost: 0.2                     random only
//     actions: 4
//     noise: bernoulli
//     file: model.json           JSON model file, relative to the config
//     inline: {...}              same keys as a JSON model file
//   algorithms: [sim-oos, seq-oos, contextual-ucb, meta-ucb]
//   horizon: 100000              required
//   budget: 3                    required
//   beta: 1
//   delta: 0.1
//   costs: 0.5                   uniform cost, or one value per observation
//   sweep: [0, 4, 8]             uniform cost points; overrides costs
//   seeds: [1, 2, 3]
//   curve_points: 1000           0 turns curves.csv off
//   steps: false                 write every step to steps.csv
//
// Validation failures carry file:line:column of the offending node.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>
#include <yaml-cpp/yaml.h>

#include "oos/model.hpp"
#include "oos/model_io.hpp"
#include "oos/synthetic.hpp"

namespace oos {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Algorithm { kSimOos, kSeqOos, kContextualUcb, kMetaUcb };

inline std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kSimOos: return "sim-oos";
    case Algorithm::kSeqOos: return "seq-oos";
    case Algorithm::kContextualUcb: return "contextual-ucb";
    case Algorithm::kMetaUcb: return "meta-ucb";
  }
  return "?";
}

inline std::optional<Algorithm> parse_algorithm(const std::string& s) {
  for (Algorithm a : {Algorithm::kSimOos, Algorithm::kSeqOos, Algorithm::kContextualUcb, Algorithm::kMetaUcb})
    if (to_string(a) == s) return a;
  return std::nullopt;
}

struct ExperimentConfig {
  /// Base model; costs are replaced per cost point.
  std::optional<GenerativeModel> model;
  std::string model_label;
  std::vector<Algorithm> algorithms = {Algorithm::kSimOos, Algorithm::kSeqOos, Algorithm::kContextualUcb};
  std::uint64_t horizon = 0;
  int budget = 0;
  double beta = 1.0;
  double delta = 0.1;
  /// Per-observation costs when no sweep is given; empty keeps the model's.
  std::vector<double> costs;
  std::vector<double> sweep;
  std::vector<std::uint64_t> seeds = {1};
  std::uint64_t curve_points = 1000;
  bool write_steps = false;

  /// One cost vector per cost point.
  std::vector<std::vector<double>> cost_points() const {
    const int d = model->num_observations();
    if (!sweep.empty()) {
      std::vector<std::vector<double>> out;
      for (double c : sweep) out.emplace_back(d, c);
      return out;
    }
    return {costs.empty() ? model->costs() : costs};
  }
};

namespace detail {

inline std::string where(const std::string& source, const YAML::Node& node) {
  const YAML::Mark mark = node.Mark();
  if (mark.is_null()) return source;
  return source + ":" + std::to_string(mark.line + 1) + ":" + std::to_string(mark.column + 1);
}

[[noreturn]] inline void fail(const std::string& source, const YAML::Node& node, const std::string& msg) {
  throw ConfigError(where(source, node) + ": " + msg);
}

inline void allow_keys(const std::string& source, const YAML::Node& map, std::initializer_list<const char*> keys) {
  if (!map.IsMap()) fail(source, map, "expected a mapping");
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) fail(source, kv.first, "unknown key '" + key + "'");
  }
}

template <class T>
T scalar(const std::string& source, const YAML::Node& node, const char* what) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    fail(source, node, std::string("bad value for ") + what);
  }
}

template <class T>
std::vector<T> list_of(const std::string& source, const YAML::Node& node, const char* what) {
  if (!node.IsSequence()) fail(source, node, std::string(what) + " must be a list");
  std::vector<T> out;
  for (const auto& item : node) out.push_back(scalar<T>(source, item, what));
  return out;
}

inline nlohmann::json yaml_to_json(const std::string& source, const YAML::Node& node) {
  if (node.IsMap()) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& kv : node) out[kv.first.as<std::string>()] = yaml_to_json(source, kv.second);
    return out;
  }
  if (node.IsSequence()) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& item : node) out.push_back(yaml_to_json(source, item));
    return out;
  }
  if (!node.IsScalar()) fail(source, node, "unexpected null");
  const auto text = node.Scalar();
  if (node.Tag() != "!") {
    // plain scalars: integers first, then doubles, else strings
    long long i = 0;
    if (YAML::convert<long long>::decode(node, i)) return i;
    double d = 0.0;
    if (YAML::convert<double>::decode(node, d)) return d;
  }
  return text;
}

inline GenerativeModel parse_model(const std::string& source, const YAML::Node& node,
                                   const std::filesystem::path& base_dir, std::string& label) {
  allow_keys(source, node,
             {"synthetic", "seed", "alphabet_sizes", "correlation", "sharpness", "observations", "alphabet_size",
              "max_cost", "actions", "noise", "file", "inline"});
  const int kinds = static_cast<int>(static_cast<bool>(node["synthetic"])) +
                    static_cast<int>(static_cast<bool>(node["file"])) +
                    static_cast<int>(static_cast<bool>(node["inline"]));
  if (kinds != 1) fail(source, node, "model needs exactly one of synthetic, file, inline");

  auto reject_unless = [&](bool ok, std::initializer_list<const char*> keys, const std::string& kind) {
    if (ok) return;
    for (const char* k : keys)
      if (node[k]) fail(source, node[k], "key '" + std::string(k) + "' does not apply to " + kind);
  };
  try {
    if (node["file"]) {
      reject_unless(false, {"seed", "alphabet_sizes", "correlation", "sharpness", "observations", "alphabet_size",
                            "max_cost", "actions", "noise"}, "file models");
      std::filesystem::path path = scalar<std::string>(source, node["file"], "model.file");
      if (path.is_relative()) path = base_dir / path;
      label = "file:" + path.filename().string();
      return load_model(path.string());
    }
    if (node["inline"]) {
      reject_unless(false, {"seed", "alphabet_sizes", "correlation", "sharpness", "observations", "alphabet_size",
                            "max_cost", "actions", "noise"}, "inline models");
      label = "inline";
      return model_from_json(yaml_to_json(source, node["inline"]));
    }
    const auto kind = scalar<std::string>(source, node["synthetic"], "model.synthetic");
    if (kind == "medical") {
      reject_unless(false, {"observations", "alphabet_size", "max_cost"}, "the medical model");
      MedicalSpec spec;
      if (node["seed"]) spec.seed = scalar<std::uint64_t>(source, node["seed"], "model.seed");
      if (node["alphabet_sizes"]) spec.alphabet_sizes = list_of<int>(source, node["alphabet_sizes"], "alphabet_sizes");
      if (node["correlation"]) spec.correlation = scalar<double>(source, node["correlation"], "correlation");
      if (node["sharpness"]) spec.sharpness = scalar<double>(source, node["sharpness"], "sharpness");
      if (node["actions"]) spec.num_actions = scalar<int>(source, node["actions"], "actions");
      if (node["noise"]) spec.noise = parse_reward_noise(scalar<std::string>(source, node["noise"], "noise"));
      label = "medical:" + std::to_string(spec.seed);
      return make_synthetic_medical(spec);
    }
    if (kind == "random") {
      reject_unless(false, {"alphabet_sizes", "correlation", "sharpness"}, "the random model");
      RandomModelSpec spec;
      if (node["seed"]) spec.seed = scalar<std::uint64_t>(source, node["seed"], "model.seed");
      if (node["observations"]) spec.num_observations = scalar<int>(source, node["observations"], "observations");
      if (node["alphabet_size"]) spec.alphabet_size = scalar<int>(source, node["alphabet_size"], "alphabet_size");
      if (node["max_cost"]) spec.max_cost = scalar<double>(source, node["max_cost"], "max_cost");
      if (node["actions"]) spec.num_actions = scalar<int>(source, node["actions"], "actions");
      if (node["noise"]) spec.noise = parse_reward_noise(scalar<std::string>(source, node["noise"], "noise"));
      label = "random:" + std::to_string(spec.seed);
      return make_random_model(spec);
    }
    fail(source, node["synthetic"], "unknown synthetic model '" + kind + "' (expected medical or random)");
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    fail(source, node, e.what());
  }
}

}  // namespace detail

/// Parse and validate a config document. `source` names it in diagnostics;
/// relative model files resolve against `base_dir`.
inline ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>",
                                     const std::filesystem::path& base_dir = ".") {
  using detail::fail;
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ":" + std::to_string(e.mark.column + 1) +
                      ": " + e.msg);
  }
  if (!root.IsMap()) throw ConfigError(source + ": top level must be a mapping");
  detail::allow_keys(source, root,
                     {"model", "algorithms", "horizon", "budget", "beta", "delta", "costs", "sweep", "seeds",
                      "curve_points", "steps"});
  for (const char* k : {"model", "horizon", "budget"})
    if (!root[k]) throw ConfigError(source + ": missing required key '" + k + "'");

  ExperimentConfig cfg;
  cfg.model = detail::parse_model(source, root["model"], base_dir, cfg.model_label);
  const int d = cfg.model->num_observations();

  const YAML::Node horizon = root["horizon"];
  const auto h = detail::scalar<long long>(source, horizon, "horizon");
  if (h < 1) fail(source, horizon, "horizon must be >= 1");
  cfg.horizon = static_cast<std::uint64_t>(h);

  const YAML::Node budget = root["budget"];
  cfg.budget = detail::scalar<int>(source, budget, "budget");
  if (cfg.budget < 0 || cfg.budget > d)
    fail(source, budget, "budget must satisfy 0 <= m <= D (D = " + std::to_string(d) + ")");

  if (const YAML::Node n = root["beta"]) {
    cfg.beta = detail::scalar<double>(source, n, "beta");
    if (!(cfg.beta > 0.0) || !std::isfinite(cfg.beta)) fail(source, n, "beta must be positive");
  }
  if (const YAML::Node n = root["delta"]) {
    cfg.delta = detail::scalar<double>(source, n, "delta");
    if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) fail(source, n, "delta must be in (0, 1)");
  }
  if (const YAML::Node n = root["algorithms"]) {
    cfg.algorithms.clear();
    if (!n.IsSequence() || n.size() == 0) fail(source, n, "algorithms must be a non-empty list");
    for (const auto& item : n) {
      const auto name = detail::scalar<std::string>(source, item, "algorithm");
      const auto a = parse_algorithm(name);
      if (!a) fail(source, item, "unknown algorithm '" + name + "'");
      for (Algorithm seen : cfg.algorithms)
        if (seen == *a) fail(source, item, "duplicate algorithm '" + name + "'");
      cfg.algorithms.push_back(*a);
    }
  }
  auto check_cost = [&](const YAML::Node& node, double c) {
    if (!(c >= 0.0) || !std::isfinite(c)) fail(source, node, "costs must be finite and >= 0");
  };
  if (const YAML::Node n = root["costs"]) {
    if (n.IsSequence()) {
      cfg.costs = detail::list_of<double>(source, n, "costs");
      if (static_cast<int>(cfg.costs.size()) != d)
        fail(source, n, "costs needs one entry per observation (D = " + std::to_string(d) + ")");
      for (std::size_t i = 0; i < cfg.costs.size(); ++i) check_cost(n[i], cfg.costs[i]);
    } else {
      const double c = detail::scalar<double>(source, n, "costs");
      check_cost(n, c);
      cfg.costs.assign(d, c);
    }
  }
  if (const YAML::Node n = root["sweep"]) {
    cfg.sweep = detail::list_of<double>(source, n, "sweep");
    for (std::size_t k = 0; k < cfg.sweep.size(); ++k) check_cost(n[k], cfg.sweep[k]);
  }
  if (const YAML::Node n = root["seeds"]) {
    cfg.seeds = detail::list_of<std::uint64_t>(source, n, "seeds");
    if (cfg.seeds.empty()) fail(source, n, "seeds must not be empty");
  }
  if (const YAML::Node n = root["curve_points"]) cfg.curve_points = detail::scalar<std::uint64_t>(source, n, "curve_points");
  if (const YAML::Node n = root["steps"]) cfg.write_steps = detail::scalar<bool>(source, n, "steps");
  return cfg;
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_config(text, path.string(), path.parent_path().empty() ? "." : path.parent_path());
}

}  // namespace oos
