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

// JSON model files. Layout:
//
//   {
//     "alphabets":   [[0, 1], [0, 1, 2]],     one symbol list per observation
//     "num_actions": 2,
//     "joint":       [...],                   row-major over full states
//     "mean_reward": [[r_0, r_1], ...],       one row per full state
//     "costs":       [0.1, 0.2],
//     "noise":       "bernoulli"              or "truncated-uniform"
//   }
//
// Doubles are written in shortest round-trip form, so save/load is exact.

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "oos/model.hpp"
#include "oos/partial_state.hpp"

namespace oos {

inline nlohmann::json model_to_json(const GenerativeModel& model) {
  nlohmann::json out;
  out["alphabets"] = model.space().alphabets();
  out["num_actions"] = model.num_actions();
  out["joint"] = model.joint();
  const auto a = static_cast<std::size_t>(model.num_actions());
  const auto& table = model.mean_reward_table();
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t s = 0; s < model.joint().size(); ++s)
    rows.push_back(std::vector<double>(table.begin() + s * a, table.begin() + (s + 1) * a));
  out["mean_reward"] = std::move(rows);
  out["costs"] = model.costs();
  out["noise"] = to_string(model.noise());
  return out;
}

inline GenerativeModel model_from_json(const nlohmann::json& in) {
  static const char* const kKeys[] = {"alphabets", "num_actions", "joint", "mean_reward", "costs", "noise"};
  if (!in.is_object()) throw std::invalid_argument("model: expected a JSON object");
  for (const auto& [key, value] : in.items()) {
    bool known = false;
    for (const char* k : kKeys) known = known || key == k;
    if (!known) throw std::invalid_argument("model: unknown key '" + key + "'");
  }
  for (const char* k : kKeys)
    if (k != std::string("noise") && !in.contains(k)) throw std::invalid_argument(std::string("model: missing key '") + k + "'");
  try {
    StateSpace space(in.at("alphabets").get<std::vector<std::vector<Symbol>>>());
    const int num_actions = in.at("num_actions").get<int>();
    if (num_actions < 1) throw std::invalid_argument("model: num_actions must be >= 1");
    auto joint = in.at("joint").get<std::vector<double>>();
    const auto rows = in.at("mean_reward").get<std::vector<std::vector<double>>>();
    if (rows.size() != joint.size()) throw std::invalid_argument("model: mean_reward needs one row per state");
    std::vector<double> reward;
    reward.reserve(rows.size() * static_cast<std::size_t>(num_actions));
    for (const auto& row : rows) {
      if (row.size() != static_cast<std::size_t>(num_actions))
        throw std::invalid_argument("model: mean_reward row length must equal num_actions");
      reward.insert(reward.end(), row.begin(), row.end());
    }
    auto costs = in.at("costs").get<std::vector<double>>();
    const RewardNoise noise =
        in.contains("noise") ? parse_reward_noise(in.at("noise").get<std::string>()) : RewardNoise::kBernoulli;
    return GenerativeModel(std::move(space), std::move(joint), num_actions, std::move(reward), std::move(costs),
                           noise);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("model: ") + e.what());
  }
}

inline void save_model(const GenerativeModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << model_to_json(model).dump(2) << '\n';
}

inline GenerativeModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return model_from_json(doc);
}

}  // namespace oos
