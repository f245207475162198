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

#include <span>

#include "pbshare/core.hpp"

namespace pbshare {

/// True when `a` beats `b`: more approvals, then earlier in canonical order.
inline bool tieBreakPrefers(const Profile& profile, ProjectIndex a, ProjectIndex b) {
  const auto ca = profile.supporterCount(a);
  const auto cb = profile.supporterCount(b);
  if (ca != cb) return ca > cb;
  return a < b;
}

inline ProjectIndex tieBreak(std::span<const ProjectIndex> candidates, const Profile& profile) {
  if (candidates.empty()) throw InputError("tie-break over an empty candidate set");
  ProjectIndex best = candidates.front();
  for (ProjectIndex p : candidates.subspan(1)) {
    if (tieBreakPrefers(profile, p, best)) best = p;
  }
  return best;
}

inline ProjectIndex tieBreak(const ProjectSet& candidates, const Profile& profile) {
  const auto members = candidates.members();
  return tieBreak(std::span<const ProjectIndex>(members), profile);
}

}  // namespace pbshare
