// Copyright 2026 The pbshare Authors
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

// Evaluation metrics comparing realised shares with fair shares.

#pragma once

#include <algorithm>

#include "pbshare/core.hpp"

namespace pbshare {

namespace detail {

inline void requireFeasibleMetric(const Instance& instance, const ProjectSet& allocation) {
  instance.checkSet(allocation);
  if (!isFeasible(instance, allocation)) throw InputError("allocation exceeds the budget");
}

}  // namespace detail

/// (1/n) sum_i min(share_i / (ratio * fairshare_i), 1). Agents with fair
/// share 0 count as fully served.
inline Rational metricCappedRatio(const Instance& instance, const Profile& profile,
                                  const ProjectSet& allocation, const Rational& ratio = 1) {
  detail::requireFeasibleMetric(instance, allocation);
  if (ratio <= 0) throw InputError("approximation ratio must be positive");
  const auto have = shares(instance, profile, allocation);
  const auto fair = fairShares(instance, profile);
  Rational total = 0;
  for (AgentIndex i = 0; i < profile.numAgents(); ++i) {
    const Rational target = ratio * fair[i];
    total += target == 0 ? Rational(1) : std::min(Rational(have[i] / target), Rational(1));
  }
  return total / static_cast<long long>(profile.numAgents());
}

/// 1 - (1/n') sum_i |share_i - fairshare_i| / fairshare_i over the n' agents
/// with positive fair share (1 when there are none). May be negative.
inline Rational metricL1Normalized(const Instance& instance, const Profile& profile,
                                   const ProjectSet& allocation) {
  detail::requireFeasibleMetric(instance, allocation);
  const auto have = shares(instance, profile, allocation);
  const auto fair = fairShares(instance, profile);
  Rational total = 0;
  long long counted = 0;
  for (AgentIndex i = 0; i < profile.numAgents(); ++i) {
    if (fair[i] == 0) continue;
    total += abs(have[i] - fair[i]) / fair[i];
    ++counted;
  }
  if (counted == 0) return 1;
  return 1 - total / counted;
}

/// (1/n) sum_i |share_i - fairshare_i|, the quantity minL1Distance minimises.
inline Rational metricL1Distance(const Instance& instance, const Profile& profile,
                                 const ProjectSet& allocation) {
  detail::requireFeasibleMetric(instance, allocation);
  const auto have = shares(instance, profile, allocation);
  const auto fair = fairShares(instance, profile);
  Rational total = 0;
  for (AgentIndex i = 0; i < profile.numAgents(); ++i) total += abs(have[i] - fair[i]);
  return total / static_cast<long long>(profile.numAgents());
}

inline Rational metricBudgetFraction(const Instance& instance, const ProjectSet& allocation) {
  detail::requireFeasibleMetric(instance, allocation);
  return makeRational(instance.totalCost(allocation), instance.budget());
}

}  // namespace pbshare
