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

// Domain model for approval-based participatory budgeting: instances,
// profiles, allocations and the share of an agent.
//
// The share of agent i for a project set P is the sum, over the projects of
// P that i approves, of the project's cost split evenly among all of its
// approvers. Every fractional quantity is an exact Rational.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pbshare/errors.hpp"
#include "pbshare/project_set.hpp"
#include "pbshare/rational.hpp"

namespace pbshare {

/// Money in integer minor currency units.
using Cost = std::int64_t;

/// Projects, their costs and the budget limit. Project order is the
/// canonical order used for every lexicographic tie-break.
class Instance {
 public:
  Instance() = default;
  Instance(std::vector<std::string> ids, std::vector<Cost> costs, Cost budget)
      : ids_(std::move(ids)), costs_(std::move(costs)), budget_(budget) {
    if (ids_.size() != costs_.size()) throw InputError("project ids and costs differ in length");
    if (budget_ < 1) throw InputError("budget must be positive");
    for (std::size_t p = 0; p < ids_.size(); ++p) {
      if (costs_[p] < 1) throw InputError("project '" + ids_[p] + "' has cost < 1");
      if (!index_.emplace(ids_[p], static_cast<ProjectIndex>(p)).second) {
        throw InputError("duplicate project id '" + ids_[p] + "'");
      }
    }
  }

  std::size_t numProjects() const { return ids_.size(); }
  Cost budget() const { return budget_; }
  Cost cost(ProjectIndex p) const { return costs_.at(p); }
  const std::string& id(ProjectIndex p) const { return ids_.at(p); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::vector<Cost>& costs() const { return costs_; }

  std::optional<ProjectIndex> find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  ProjectIndex indexOf(std::string_view id) const {
    auto p = find(id);
    if (!p) throw InputError("unknown project '" + std::string(id) + "'");
    return *p;
  }

  Cost totalCost(const ProjectSet& projects) const {
    checkSet(projects);
    Cost total = 0;
    for (ProjectIndex p : projects) total += costs_[p];
    return total;
  }
  Cost totalCost() const { return totalCost(ProjectSet::full(numProjects())); }

  ProjectSet emptySet() const { return ProjectSet(numProjects()); }

  /// Builds a set from external ids, e.g. {"p1", "p3"}.
  ProjectSet setOf(const std::vector<std::string>& ids) const {
    ProjectSet s(numProjects());
    for (const auto& id : ids) s.insert(indexOf(id));
    return s;
  }

  void checkSet(const ProjectSet& projects) const {
    if (projects.universe() != numProjects()) {
      throw InputError("project set does not belong to this instance");
    }
  }

 private:
  std::vector<std::string> ids_;
  std::vector<Cost> costs_;
  Cost budget_ = 1;
  std::unordered_map<std::string, ProjectIndex> index_;
};

/// One approval ballot per agent, validated against an instance. Supporter
/// counts and per-project unit shares (cost / supporters) are cached.
class Profile {
 public:
  Profile() = default;
  Profile(const Instance& instance, std::vector<ProjectSet> ballots)
      : ballots_(std::move(ballots)),
        supporters_(instance.numProjects()),
        unitShare_(instance.numProjects()),
        budget_(instance.budget()) {
    if (ballots_.empty()) throw InputError("profile has no agents");
    for (std::size_t i = 0; i < ballots_.size(); ++i) {
      if (ballots_[i].universe() != instance.numProjects()) {
        throw InputError("ballot of agent " + std::to_string(i + 1) +
                         " does not match the instance");
      }
      for (ProjectIndex p : ballots_[i]) supporters_[p].push_back(static_cast<AgentIndex>(i));
    }
    for (std::size_t p = 0; p < instance.numProjects(); ++p) {
      if (supporters_[p].empty()) {
        throw InputError("project '" + instance.id(static_cast<ProjectIndex>(p)) +
                         "' has no supporters");
      }
      unitShare_[p] = makeRational(instance.cost(static_cast<ProjectIndex>(p)),
                                   static_cast<std::int64_t>(supporters_[p].size()));
    }
    perAgent_ = makeRational(budget_, static_cast<std::int64_t>(ballots_.size()));
  }

  std::size_t numAgents() const { return ballots_.size(); }
  std::size_t numProjects() const { return supporters_.size(); }
  const ProjectSet& ballot(AgentIndex i) const { return ballots_.at(i); }
  const std::vector<ProjectSet>& ballots() const { return ballots_; }
  bool approves(AgentIndex i, ProjectIndex p) const { return ballots_.at(i).contains(p); }
  std::size_t supporterCount(ProjectIndex p) const { return supporters_.at(p).size(); }
  const std::vector<AgentIndex>& supporters(ProjectIndex p) const { return supporters_.at(p); }
  /// c(p) / |supporters(p)|, the share of p for each of its approvers.
  const Rational& unitShare(ProjectIndex p) const { return unitShare_.at(p); }
  /// b / n.
  const Rational& budgetPerAgent() const { return perAgent_; }

  void checkAgent(AgentIndex i) const {
    if (i >= ballots_.size()) throw InputError("unknown agent " + std::to_string(i + 1));
  }

 private:
  std::vector<ProjectSet> ballots_;
  std::vector<std::vector<AgentIndex>> supporters_;
  std::vector<Rational> unitShare_;
  Cost budget_ = 1;
  Rational perAgent_;
};

/// A feasible budget allocation: selected projects and their total cost.
struct Allocation {
  ProjectSet selected;
  Cost totalCost = 0;

  /// Throws InputError when `selected` exceeds the budget.
  static Allocation of(const Instance& instance, ProjectSet selected) {
    const Cost total = instance.totalCost(selected);
    if (total > instance.budget()) {
      throw InputError("allocation costs " + std::to_string(total) + " > budget " +
                       std::to_string(instance.budget()));
    }
    return Allocation{std::move(selected), total};
  }

  bool operator==(const Allocation&) const = default;
};

inline bool isFeasible(const Instance& instance, const ProjectSet& projects) {
  return instance.totalCost(projects) <= instance.budget();
}

inline Rational share(const Instance& instance, const Profile& profile, const ProjectSet& projects,
                      AgentIndex i) {
  instance.checkSet(projects);
  profile.checkAgent(i);
  Rational total = 0;
  for (ProjectIndex p : projects) {
    if (profile.approves(i, p)) total += profile.unitShare(p);
  }
  return total;
}

/// share(projects, i) for every agent at once.
inline std::vector<Rational> shares(const Instance& instance, const Profile& profile,
                                    const ProjectSet& projects) {
  instance.checkSet(projects);
  std::vector<Rational> out(profile.numAgents());
  for (ProjectIndex p : projects) {
    for (AgentIndex i : profile.supporters(p)) out[i] += profile.unitShare(p);
  }
  return out;
}

/// min{b/n, share(A_i, i)}.
inline Rational fairShare(const Instance& instance, const Profile& profile, AgentIndex i) {
  profile.checkAgent(i);
  Rational own = share(instance, profile, profile.ballot(i), i);
  return std::min(own, profile.budgetPerAgent());
}

inline std::vector<Rational> fairShares(const Instance& instance, const Profile& profile) {
  std::vector<Rational> out;
  out.reserve(profile.numAgents());
  for (AgentIndex i = 0; i < profile.numAgents(); ++i) out.push_back(fairShare(instance, profile, i));
  return out;
}

/// Smallest group size k with k/n >= c(P)/b, i.e. ceil(n * c(P) / b).
inline std::size_t minCohesiveSize(std::size_t numAgents, Cost setCost, Cost budget) {
  const auto need = static_cast<__int128>(numAgents) * setCost;
  return static_cast<std::size_t>((need + budget - 1) / budget);
}

/// Everything needed to reason about P-cohesive groups for one P.
struct CohesiveQuery {
  ProjectSet projectSet;
  /// Agents approving every project of P, ascending.
  std::vector<AgentIndex> maximalGroup;
  std::size_t minGroupSize = 0;
  /// share(P, i), identical for all i in maximalGroup.
  Rational groupShare;

  bool hasCohesiveGroup() const {
    return !projectSet.empty() && maximalGroup.size() >= minGroupSize;
  }
};

inline CohesiveQuery cohesiveQuery(const Instance& instance, const Profile& profile,
                                   const ProjectSet& projects) {
  instance.checkSet(projects);
  if (projects.empty()) throw InputError("cohesive query needs a nonempty project set");
  CohesiveQuery q;
  q.projectSet = projects;
  for (AgentIndex i = 0; i < profile.numAgents(); ++i) {
    if (projects.isSubsetOf(profile.ballot(i))) q.maximalGroup.push_back(i);
  }
  q.minGroupSize =
      minCohesiveSize(profile.numAgents(), instance.totalCost(projects), instance.budget());
  for (ProjectIndex p : projects) q.groupShare += profile.unitShare(p);
  return q;
}

}  // namespace pbshare
