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

// Seeded model generators: a correlated four-test "medical" surrogate and
// fully random small models for property tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "oos/model.hpp"
#include "oos/partial_state.hpp"
#include "oos/random.hpp"

namespace oos {

/// Knobs of the medical surrogate. Observations stand for age band, estrogen
/// receptor status, tumor stage and WHO grade; actions are treatment regimes.
struct MedicalSpec {
  std::uint64_t seed = 7;
  std::vector<int> alphabet_sizes = {3, 2, 3, 3};
  int num_actions = 4;
  /// 0 gives independent observations; 1 gives a pure latent-severity mixture.
  double correlation = 0.7;
  int latent_levels = 3;
  /// Inverse temperature of the treatment-response model.
  double sharpness = 3.0;
  double cost = 0.0;
  RewardNoise noise = RewardNoise::kBernoulli;
};

namespace detail {

inline double standard_normal(Rng& rng) {
  // Box-Muller on the portable uniform; the second variate is discarded.
  const double u1 = std::max(uniform01(rng), 0x1.0p-60);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

inline std::vector<double> softmax(const std::vector<double>& logits) {
  const double hi = *std::max_element(logits.begin(), logits.end());
  std::vector<double> out(logits.size());
  double total = 0.0;
  for (std::size_t k = 0; k < logits.size(); ++k) total += out[k] = std::exp(logits[k] - hi);
  for (double& v : out) v /= total;
  return out;
}

inline void normalize(std::vector<double>& p) {
  double total = 0.0;
  for (double v : p) total += v;
  for (double& v : p) v /= total;
}

}  // namespace detail

/// Correlated surrogate: observations share a latent severity level, and the
/// best treatment depends on the observed profile.
///
/// joint = (1 − ρ) ∏_i q_i(x_i) + ρ Σ_z π(z) ∏_i q_i(x_i | z), where q_i is
/// the marginal of q_i(· | z) under π, so ρ changes dependence but not the
/// per-observation marginals.
inline GenerativeModel make_synthetic_medical(const MedicalSpec& spec) {
  const int d = static_cast<int>(spec.alphabet_sizes.size());
  if (d < 1) throw std::invalid_argument("make_synthetic_medical: need at least one observation");
  for (int size : spec.alphabet_sizes)
    if (size < 2 || size > 16) throw std::invalid_argument("make_synthetic_medical: alphabet sizes must be in [2,16]");
  if (spec.num_actions < 1) throw std::invalid_argument("make_synthetic_medical: need at least one action");
  if (!(spec.correlation >= 0.0 && spec.correlation <= 1.0))
    throw std::invalid_argument("make_synthetic_medical: correlation must be in [0,1]");
  if (spec.latent_levels < 1) throw std::invalid_argument("make_synthetic_medical: need a latent level");

  Rng rng(mix_seed(spec.seed));
  std::vector<std::vector<Symbol>> alphabets(d);
  for (int i = 0; i < d; ++i)
    for (int x = 0; x < spec.alphabet_sizes[i]; ++x) alphabets[i].push_back(x);
  StateSpace space(alphabets);

  const int levels = spec.latent_levels;
  std::vector<double> prior(levels);
  for (double& v : prior) v = 0.5 + uniform01(rng);
  detail::normalize(prior);

  // conditional[i][z][x] = q_i(x | z)
  std::vector<std::vector<std::vector<double>>> conditional(d);
  std::vector<std::vector<double>> marginal(d);
  for (int i = 0; i < d; ++i) {
    const int k = spec.alphabet_sizes[i];
    const double strength = 1.0 + 1.5 * uniform01(rng);
    std::vector<double> base(k);
    for (double& b : base) b = 0.5 * detail::standard_normal(rng);
    marginal[i].assign(k, 0.0);
    for (int z = 0; z < levels; ++z) {
      std::vector<double> logits(k);
      const double zc = levels > 1 ? (z - 0.5 * (levels - 1)) / (0.5 * (levels - 1)) : 0.0;
      for (int x = 0; x < k; ++x) {
        const double xc = (x - 0.5 * (k - 1)) / (0.5 * (k - 1));
        logits[x] = base[x] + strength * zc * xc;
      }
      conditional[i].push_back(detail::softmax(logits));
      for (int x = 0; x < k; ++x) marginal[i][x] += prior[z] * conditional[i][z][x];
    }
  }

  const auto n_states = static_cast<std::size_t>(space.num_states());
  std::vector<double> joint(n_states);
  for (std::size_t s = 0; s < n_states; ++s) {
    const StateVector phi = space.state_at(s);
    double independent = 1.0;
    for (int i = 0; i < d; ++i) independent *= marginal[i][phi[i]];
    double mixture = 0.0;
    for (int z = 0; z < levels; ++z) {
      double term = prior[z];
      for (int i = 0; i < d; ++i) term *= conditional[i][z][phi[i]];
      mixture += term;
    }
    joint[s] = (1.0 - spec.correlation) * independent + spec.correlation * mixture;
  }
  detail::normalize(joint);

  // Treatment response: score_a(φ) = bias_a + Σ_i w_{a,i}(x_i), with the
  // observation weights decaying in i so the tests differ in usefulness.
  const int num_actions = spec.num_actions;
  std::vector<double> bias(num_actions);
  for (double& b : bias) b = 0.3 * detail::standard_normal(rng);
  std::vector<std::vector<std::vector<double>>> weight(num_actions, std::vector<std::vector<double>>(d));
  for (int a = 0; a < num_actions; ++a)
    for (int i = 0; i < d; ++i) {
      const double importance = 1.0 / (1.0 + 0.6 * i);
      for (int x = 0; x < spec.alphabet_sizes[i]; ++x)
        weight[a][i].push_back(importance * detail::standard_normal(rng));
    }

  std::vector<double> reward(n_states * static_cast<std::size_t>(num_actions));
  for (std::size_t s = 0; s < n_states; ++s) {
    const StateVector phi = space.state_at(s);
    std::vector<double> logits(num_actions);
    for (int a = 0; a < num_actions; ++a) {
      logits[a] = bias[a];
      for (int i = 0; i < d; ++i) logits[a] += weight[a][i][phi[i]];
      logits[a] *= spec.sharpness;
    }
    const auto response = detail::softmax(logits);
    for (int a = 0; a < num_actions; ++a) reward[s * num_actions + a] = std::clamp(response[a], 0.0, 1.0);
  }

  return GenerativeModel(std::move(space), std::move(joint), num_actions, std::move(reward),
                         std::vector<double>(d, spec.cost), spec.noise);
}

/// Fully random model over uniform alphabets of the given size: joint drawn
/// from a flat Dirichlet, mean rewards uniform on [0, 1], costs uniform on
/// [0, max_cost].
struct RandomModelSpec {
  std::uint64_t seed = 1;
  int num_observations = 2;
  int alphabet_size = 2;
  int num_actions = 2;
  double max_cost = 0.2;
  RewardNoise noise = RewardNoise::kBernoulli;
};

inline GenerativeModel make_random_model(const RandomModelSpec& spec) {
  if (spec.num_observations < 0 || spec.alphabet_size < 1 || spec.num_actions < 1)
    throw std::invalid_argument("make_random_model: invalid dimensions");
  Rng rng(mix_seed(spec.seed ^ 0x5eedull));
  std::vector<std::vector<Symbol>> alphabets(spec.num_observations);
  for (auto& alpha : alphabets)
    for (int x = 0; x < spec.alphabet_size; ++x) alpha.push_back(x);
  StateSpace space(alphabets);
  std::vector<double> joint(space.num_states());
  for (double& p : joint) p = -std::log(1.0 - uniform01(rng));
  detail::normalize(joint);
  std::vector<double> reward(space.num_states() * static_cast<std::uint64_t>(spec.num_actions));
  for (double& r : reward) r = uniform01(rng);
  std::vector<double> costs(spec.num_observations);
  for (double& c : costs) c = spec.max_cost * uniform01(rng);
  return GenerativeModel(std::move(space), std::move(joint), spec.num_actions, std::move(reward), std::move(costs),
                         spec.noise);
}

}  // namespace oos
