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

#include <cstdint>
#include <limits>

#include "oos/estimation.hpp"
#include "oos/model.hpp"

namespace oos {

/// EstimateSource that answers with the true model quantities. Combined with
/// ZeroRadii the optimistic planners collapse onto the exact oracles.
///
/// Zero-probability partial states report count 0, which makes every
/// estimate fall back to the same defaults the CounterStore uses.
class ExactEstimates {
 public:
  explicit ExactEstimates(const GenerativeModel& model) : model_(&model) {}

  static constexpr std::uint64_t kCount = std::numeric_limits<std::uint32_t>::max();

  Estimate reward_estimate(Action a, const PartialState& psi) const {
    const double p = model_->marginal_prob(psi);
    if (!(p > 0.0)) return {0.0, 0};
    return {model_->weighted_reward(a, psi) / p, kCount};
  }

  Estimate prob_estimate(const PartialState& psi) const { return {model_->marginal_prob(psi), kCount}; }

  Estimate transition_estimate(const PartialState& from, ObservationId i, const PartialState& to) const {
    const double p = model_->marginal_prob(from);
    if (!(p > 0.0)) return {1.0 / model_->space().alphabet_size(i), 0};
    return {model_->transition_prob(from, i, to), kCount};
  }

 private:
  const GenerativeModel* model_;
};

static_assert(EstimateSource<ExactEstimates>);
static_assert(EstimateSource<CounterStore>);

}  // namespace oos
