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

#pragma once

#include <vector>

#include "pbshare/core.hpp"
#include "pbshare/tie_break.hpp"

namespace pbshare {

struct PhragmenRound {
  ProjectIndex project = 0;
  /// Load every supporter of `project` carries after the round.
  Rational newLoad;
};

struct PhragmenState {
  Allocation selected;
  std::vector<Rational> load;
  std::vector<PhragmenRound> trace;
  bool terminated = false;
};

/// (c(p) + sum of supporter loads) / |supporters(p)|.
inline Rational phragmenNewLoad(const Instance& instance, const Profile& profile,
                                const std::vector<Rational>& load, ProjectIndex p) {
  Rational total(instance.cost(p));
  for (AgentIndex i : profile.supporters(p)) total += load[i];
  return total / static_cast<long long>(profile.supporterCount(p));
}

/// Discrete sequential Phragmén. Stops as soon as any project attaining the
/// minimal new load would overflow the budget, even if another minimiser
/// still fits.
inline PhragmenState runSequentialPhragmen(const Instance& instance, const Profile& profile) {
  PhragmenState state{Allocation{instance.emptySet(), 0},
                      std::vector<Rational>(profile.numAgents()), {}, false};
  const std::size_t m = instance.numProjects();
  while (state.selected.selected.size() < m) {
    std::vector<ProjectIndex> argmin;
    Rational best;
    for (ProjectIndex p = 0; p < m; ++p) {
      if (state.selected.selected.contains(p)) continue;
      Rational value = phragmenNewLoad(instance, profile, state.load, p);
      if (argmin.empty() || value < best) {
        argmin.assign(1, p);
        best = std::move(value);
      } else if (value == best) {
        argmin.push_back(p);
      }
    }
    bool overflow = false;
    for (ProjectIndex p : argmin) {
      if (state.selected.totalCost + instance.cost(p) > instance.budget()) overflow = true;
    }
    if (overflow) break;

    const ProjectIndex chosen = tieBreak(std::span<const ProjectIndex>(argmin), profile);
    for (AgentIndex i : profile.supporters(chosen)) state.load[i] = best;
    state.selected.selected.insert(chosen);
    state.selected.totalCost += instance.cost(chosen);
    state.trace.push_back({chosen, best});
  }
  state.terminated = true;
  return state;
}

}  // namespace pbshare
