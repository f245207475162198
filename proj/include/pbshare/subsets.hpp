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

// Bitmask helpers for the exponential searches. A mask has bit k set iff
// project k is a member; "canonical subset order" is ascending mask value.

#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pbshare/core.hpp"

namespace pbshare {

using Mask = std::uint64_t;

inline constexpr std::size_t kDefaultEnumerationCap = 20;

inline void checkEnumerationCap(std::size_t numProjects, std::size_t cap, std::string_view what) {
  if (numProjects > cap || numProjects > 62) {
    throw SizeError(std::string(what) + ": " + std::to_string(numProjects) +
                    " projects exceed the enumeration cap of " + std::to_string(cap));
  }
}

inline Mask fullMask(std::size_t numProjects) {
  return numProjects >= 64 ? ~Mask{0} : ((Mask{1} << numProjects) - 1);
}

inline std::vector<Mask> ballotMasks(const Profile& profile) {
  std::vector<Mask> out;
  out.reserve(profile.numAgents());
  for (const auto& ballot : profile.ballots()) out.push_back(ballot.mask());
  return out;
}

inline Cost maskCost(const Instance& instance, Mask mask) {
  Cost total = 0;
  while (mask != 0) {
    total += instance.cost(static_cast<ProjectIndex>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return total;
}

/// Sum of unit shares over the mask; equals share(P, i) for any i approving all of P.
inline Rational maskGroupShare(const Profile& profile, Mask mask) {
  Rational total = 0;
  while (mask != 0) {
    total += profile.unitShare(static_cast<ProjectIndex>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return total;
}

}  // namespace pbshare
