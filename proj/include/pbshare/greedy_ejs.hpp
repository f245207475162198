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

// Greedy cohesive procedure for extended justified share.
//
// Each round looks at every nonempty P among the unselected projects and
// at the unsatisfied agents approving all of P. If enough of them exist to
// be P-cohesive, the pair is a candidate; the candidate with the largest
// share(P, .) wins (smallest mask on ties). P is funded and the group is
// marked satisfied. Only the maximal group per P is considered: the share of
// P is the same for everyone approving P, so no smaller group can do better.

#pragma once

#include <bit>
#include <optional>
#include <vector>

#include "pbshare/core.hpp"
#include "pbshare/subsets.hpp"

namespace pbshare {

struct GreedyEjsRound {
  ProjectSet projects;
  std::vector<AgentIndex> group;
  Rational groupShare;
};

struct GreedyEjsOutcome {
  Allocation allocation;
  std::vector<GreedyEjsRound> trace;
};

inline GreedyEjsOutcome runGreedyEjsTraced(const Instance& instance, const Profile& profile,
                                           std::size_t cap = kDefaultEnumerationCap) {
  const std::size_t m = instance.numProjects();
  checkEnumerationCap(m, cap, "greedy EJS");
  const std::size_t n = profile.numAgents();
  const auto masks = ballotMasks(profile);
  std::vector<bool> satisfied(n, false);
  Mask selected = 0;
  GreedyEjsOutcome out{Allocation{instance.emptySet(), 0}, {}};

  while (true) {
    const Mask free = fullMask(m) & ~selected;
    std::optional<Mask> bestSet;
    Rational bestShare;
    std::vector<AgentIndex> bestGroup;
    std::vector<AgentIndex> group;
    // Ascending walk over the nonempty submasks of `free`.
    for (Mask sub = free & (Mask{0} - free); sub != 0; sub = (sub - free) & free) {
      const Cost cost = maskCost(instance, sub);
      if (cost > instance.budget()) continue;
      const std::size_t need = minCohesiveSize(n, cost, instance.budget());
      group.clear();
      for (AgentIndex i = 0; i < n; ++i) {
        if (!satisfied[i] && (masks[i] & sub) == sub) group.push_back(i);
      }
      if (group.size() < need || group.empty()) continue;
      Rational value = maskGroupShare(profile, sub);
      if (!bestSet || value > bestShare) {
        bestSet = sub;
        bestShare = std::move(value);
        bestGroup = group;
      }
    }
    if (!bestSet) break;

    selected |= *bestSet;
    for (AgentIndex i : bestGroup) satisfied[i] = true;
    out.trace.push_back({ProjectSet::fromMask(m, *bestSet), bestGroup, bestShare});
  }
  out.allocation = Allocation::of(instance, ProjectSet::fromMask(m, selected));
  return out;
}

inline Allocation runGreedyEjs(const Instance& instance, const Profile& profile,
                               std::size_t cap = kDefaultEnumerationCap) {
  return runGreedyEjsTraced(instance, profile, cap).allocation;
}

}  // namespace pbshare
