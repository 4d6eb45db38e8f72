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

#include <algorithm>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace oos {

struct L1Solution {
  std::vector<double> p_tilde;
  double value = 0.0;
};

/**
 * Maximizes values · p over {p in simplex : ||p - p_hat||_1 <= radius}.
 *
 * Greedy solution of extended value iteration: move min(radius/2,
 * 1 - p_hat[best]) mass onto the highest-value outcome and take the same
 * total mass from the lowest-value outcomes, lowest first. This is an exact
 * maximizer for a linear objective. Value ties are broken toward the lower
 * outcome index.
 */
inline L1Solution l1_linear_max(std::span<const double> p_hat, std::span<const double> values, double radius) {
  const std::size_t k = p_hat.size();
  if (values.size() != k) throw std::invalid_argument("l1_linear_max: size mismatch");
  if (k == 0) throw std::invalid_argument("l1_linear_max: empty outcome set");
  if (!(radius >= 0.0)) throw std::invalid_argument("l1_linear_max: negative radius");

  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Descending by value, lower index first among equals.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });

  L1Solution out;
  out.p_tilde.assign(p_hat.begin(), p_hat.end());
  const std::size_t best = order.front();
  const double moved = std::min(radius / 2.0, 1.0 - p_hat[best]);
  if (moved > 0.0) {
    out.p_tilde[best] = p_hat[best] + moved;
    double to_remove = moved;
    for (std::size_t r = k; r-- > 1 && to_remove > 0.0;) {
      const std::size_t j = order[r];
      const double take = std::min(out.p_tilde[j], to_remove);
      out.p_tilde[j] -= take;
      to_remove -= take;
    }
  }
  for (std::size_t j = 0; j < k; ++j) out.value += out.p_tilde[j] * values[j];
  return out;
}

}  // namespace oos
