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

// Small hand-built instances that pin down the behaviour of rules and
// axioms. Projects are named p1..pm, agents are 1..n.

#pragma once

#include <string>
#include <vector>

#include "pbshare/core.hpp"

namespace pbshare {

struct Election {
  Instance instance;
  Profile profile;
};

/// Builds an election from costs and ballots given as 1-based project numbers.
inline Election makeElection(const std::vector<Cost>& costs, Cost budget,
                             const std::vector<std::vector<int>>& ballots) {
  std::vector<std::string> ids;
  for (std::size_t p = 0; p < costs.size(); ++p) ids.push_back("p" + std::to_string(p + 1));
  Instance instance(std::move(ids), costs, budget);
  std::vector<ProjectSet> sets;
  for (const auto& ballot : ballots) {
    ProjectSet s(costs.size());
    for (int p : ballot) {
      if (p < 1 || static_cast<std::size_t>(p) > costs.size()) {
        throw InputError("ballot references project " + std::to_string(p));
      }
      s.insert(static_cast<ProjectIndex>(p - 1));
    }
    sets.push_back(std::move(s));
  }
  Profile profile(instance, std::move(sets));
  return {std::move(instance), std::move(profile)};
}

struct Fixture {
  std::string name;
  std::string note;
  Election election;
};

inline std::vector<Fixture> fixtureRegistry() {
  std::vector<Fixture> out;
  auto add = [&out](std::string name, std::string note, const std::vector<Cost>& costs,
                    Cost budget, const std::vector<std::vector<int>>& ballots) {
    out.push_back({std::move(name), std::move(note), makeElection(costs, budget, ballots)});
  };
  // c(p1) = 8 is a common misreading: the shares 6/3 and the feasible pair
  // {p1, p2} under b = 8 both need cost 6.
  add("EX1", "share illustration; c(p1)=6 (a cost of 8 contradicts the shares)",
      {6, 2, 2}, 8, {{1, 2}, {1, 2}, {1}, {3}});
  add("EX2", "no FS-1 allocation exists", {3, 3, 3}, 5, {{1, 2}, {1, 3}, {2, 3}});
  add("EX3", "Strong-EJS unsatisfiable", {1, 1, 1}, 2, {{1}, {1, 2}, {1, 3}, {2, 3}});
  // {p3,p4,p5,p6} fails EJS too: agent 2 alone is {p1}-cohesive and gets
  // 1/3 < 1/2.
  add("EX4", "EJS versus EJR; {p1,p4,p5,p6} fails EJS", {1, 1, 1, 1, 1, 1}, 4,
      {{1, 2, 3}, {1, 2, 4}, {4, 5, 6}, {4, 5, 6}});
  add("EX5", "{p2,p3,p5} fails Local-EJS (witness P={p1,p4}, p=p4)", {8, 5, 2, 2, 10}, 20,
      {{1, 2, 3, 4}, {1, 2, 3, 4}, {3, 4, 5}, {3, 4, 5}});
  add("EX6", "unit cost; equal-shares run picks p3 first and fails EJS", {1, 1, 1}, 2,
      {{1, 3}, {2, 3}});
  add("EX7", "{p1,p2,p3,p4} satisfies EJS-1 but not Local-EJS", {1, 1, 1, 1, 1, 1}, 4,
      {{1, 2, 3, 4, 5}, {4, 5, 6}});
  // Costs (6, 1, 1) make {p1} Local-FS and not EJS-1; the axiom tests check it.
  add("EX8", "{p1} satisfies Local-FS but not EJS-1; costs (6,1,1) chosen", {6, 1, 1}, 6,
      {{1, 2, 3}, {2, 3}});
  add("EX9", "{p1,p4} satisfies FS-1 but not Local-EJS", {4, 2, 5, 7}, 12,
      {{4}, {1, 2, 3}, {1, 2, 3}});
  add("EX10", "{p1,p5} satisfies Strong-EJS and FS-1 but not Local-FS", {12, 12, 1, 1, 4}, 16,
      {{1, 2, 3, 4}, {1, 5}});
  add("EX11", "{p3} Local-FS but not FS-1 while {p1,p2} is FS-1", {3, 4, 7}, 10,
      {{3}, {3}, {1, 2}, {1, 2, 3}});
  add("EX12", "only {p1,p2,p3} satisfies FS and it is not priceable", {1, 5, 3, 1}, 9,
      {{1}, {2}, {3, 4}});
  add("EX13", "{p1,p2} priceable but neither Local-FS nor EJS-1", {8, 8, 5, 5}, 20,
      {{1, 2}, {2, 3, 4}});
  add("EX14", "{p1} FS-1, Local-FS and EJS but not priceable", {3, 2}, 3, {{1}, {2}});
  add("EX15", "{p1,p2} satisfies FS-1 but not Local-FS (witness p4)", {3, 3, 6, 1}, 6,
      {{1, 2}, {3, 4}, {3, 4}});
  add("EX16", "no FS allocation exists", {1, 1}, 1, {{1}, {2}});
  return out;
}

inline Fixture fixture(const std::string& name) {
  for (auto& f : fixtureRegistry()) {
    if (f.name == name) return f;
  }
  throw InputError("unknown fixture '" + name + "'");
}

}  // namespace pbshare
