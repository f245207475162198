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

#include <algorithm>
#include <numeric>
#include <vector>

#include "pbshare/core.hpp"
#include "pbshare/tie_break.hpp"

namespace pbshare {

/// Scans projects by descending approval count (canonical order on ties)
/// and keeps every project that still fits; misfits are skipped, not fatal.
inline Allocation runGreedyApproval(const Instance& instance, const Profile& profile) {
  std::vector<ProjectIndex> order(instance.numProjects());
  std::iota(order.begin(), order.end(), ProjectIndex{0});
  std::stable_sort(order.begin(), order.end(), [&](ProjectIndex a, ProjectIndex b) {
    return tieBreakPrefers(profile, a, b);
  });
  Allocation out{instance.emptySet(), 0};
  for (ProjectIndex p : order) {
    if (out.totalCost + instance.cost(p) <= instance.budget()) {
      out.selected.insert(p);
      out.totalCost += instance.cost(p);
    }
  }
  return out;
}

}  // namespace pbshare
