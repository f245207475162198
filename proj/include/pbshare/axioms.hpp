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

// Exact checkers for the share-based fairness criteria.
//
// The group criteria quantify over every P and every P-cohesive group N.
// For a fixed P all agents approving P get the same share(P, .), and any
// subset of them of size >= ceil(n c(P) / b) is P-cohesive. So a violating
// group exists iff the agents of the maximal group that fail the per-agent
// test are at least that many. This turns the double enumeration into one
// pass over project subsets.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "pbshare/core.hpp"
#include "pbshare/exact_lp.hpp"
#include "pbshare/subsets.hpp"

namespace pbshare {

enum class Axiom { FS, FS1, LocalFS, StrongEJS, EJS, EJS1, LocalEJS, Priceable };

inline constexpr Axiom kAllAxioms[] = {Axiom::FS,  Axiom::FS1,  Axiom::LocalFS,  Axiom::StrongEJS,
                                       Axiom::EJS, Axiom::EJS1, Axiom::LocalEJS, Axiom::Priceable};

inline std::string_view toString(Axiom axiom) {
  switch (axiom) {
    case Axiom::FS: return "FS";
    case Axiom::FS1: return "FS-1";
    case Axiom::LocalFS: return "Local-FS";
    case Axiom::StrongEJS: return "Strong-EJS";
    case Axiom::EJS: return "EJS";
    case Axiom::EJS1: return "EJS-1";
    case Axiom::LocalEJS: return "Local-EJS";
    case Axiom::Priceable: return "Priceable";
  }
  return "?";
}

/// An agent below its fair share (FS, FS-1).
struct AgentWitness {
  AgentIndex agent = 0;
  Rational share;
  Rational required;
};

/// An unselected project none of whose supporters would reach fair share.
struct ProjectWitness {
  ProjectIndex project = 0;
};

/// A P-cohesive group violating a group criterion; `project` is set for
/// Local-EJS (the project whose addition still leaves the group short).
struct GroupWitness {
  ProjectSet projects;
  std::vector<AgentIndex> agents;
  std::optional<ProjectIndex> project;
  Rational deserved;
};

/// Allowance plus per-(agent, project) payments; absent pairs pay zero.
struct PriceSystem {
  Rational allowance;
  std::map<std::pair<AgentIndex, ProjectIndex>, Rational> payment;

  Rational spent(AgentIndex i) const {
    Rational total = 0;
    for (auto it = payment.lower_bound({i, 0}); it != payment.end() && it->first.first == i; ++it) {
      total += it->second;
    }
    return total;
  }
  Rational unspent(AgentIndex i) const { return allowance - spent(i); }
};

using Witness = std::variant<AgentWitness, ProjectWitness, GroupWitness, PriceSystem>;

struct AxiomReport {
  Axiom axiom = Axiom::FS;
  bool verdict = false;
  std::optional<Witness> witness;
};

struct CheckOptions {
  std::size_t maxProjects = kDefaultEnumerationCap;
  /// Priceability linear program limits.
  std::size_t maxSelectedForPrices = 12;
  std::size_t maxAgentsForPrices = 10;
};

namespace detail {

inline void requireFeasible(const Instance& instance, const ProjectSet& allocation) {
  instance.checkSet(allocation);
  if (!isFeasible(instance, allocation)) throw InputError("allocation exceeds the budget");
}

/// Largest share({p}, i) over approved projects outside the allocation.
inline Rational maxMarginal(const Profile& profile, const ProjectSet& allocation, AgentIndex i) {
  Rational best = 0;
  for (ProjectIndex p : profile.ballot(i)) {
    if (!allocation.contains(p) && profile.unitShare(p) > best) best = profile.unitShare(p);
  }
  return best;
}

/// Walks every nonempty P in ascending mask order that admits a cohesive
/// group, handing the visitor P, its maximal group and the cohesive size
/// threshold. The visitor returns a witness to stop early.
template <typename Visitor>
std::optional<GroupWitness> scanCohesive(const Instance& instance, const Profile& profile,
                                         const CheckOptions& options, std::string_view what,
                                         Visitor&& visit) {
  const std::size_t m = instance.numProjects();
  checkEnumerationCap(m, options.maxProjects, what);
  const std::size_t n = profile.numAgents();
  const auto masks = ballotMasks(profile);
  std::vector<AgentIndex> group;
  for (Mask sub = 1; sub <= fullMask(m) && sub != 0; ++sub) {
    const Cost cost = maskCost(instance, sub);
    if (cost > instance.budget()) continue;
    const std::size_t need = minCohesiveSize(n, cost, instance.budget());
    group.clear();
    for (AgentIndex i = 0; i < n; ++i) {
      if ((masks[i] & sub) == sub) group.push_back(i);
    }
    if (group.size() < need || group.empty()) continue;
    if (auto w = visit(sub, group, need)) return w;
  }
  return std::nullopt;
}

inline AxiomReport fromGroupWitness(Axiom axiom, std::optional<GroupWitness> w) {
  AxiomReport report{axiom, !w.has_value(), std::nullopt};
  if (w) report.witness = std::move(*w);
  return report;
}

}  // namespace detail

inline AxiomReport checkFs(const Instance& instance, const Profile& profile,
                           const ProjectSet& allocation) {
  detail::requireFeasible(instance, allocation);
  const auto have = shares(instance, profile, allocation);
  for (AgentIndex i = 0; i < profile.numAgents(); ++i) {
    Rational need = fairShare(instance, profile, i);
    if (have[i] < need) return {Axiom::FS, false, AgentWitness{i, have[i], std::move(need)}};
  }
  return {Axiom::FS, true, std::nullopt};
}

inline AxiomReport checkFs1(const Instance& instance, const Profile& profile,
                            const ProjectSet& allocation) {
  detail::requireFeasible(instance, allocation);
  const auto have = shares(instance, profile, allocation);
  for (AgentIndex i = 0; i < profile.numAgents(); ++i) {
    Rational need = fairShare(instance, profile, i);
    if (have[i] + detail::maxMarginal(profile, allocation, i) < need) {
      return {Axiom::FS1, false, AgentWitness{i, have[i], std::move(need)}};
    }
  }
  return {Axiom::FS1, true, std::nullopt};
}

inline AxiomReport checkLocalFs(const Instance& instance, const Profile& profile,
                                const ProjectSet& allocation) {
  detail::requireFeasible(instance, allocation);
  const auto have = shares(instance, profile, allocation);
  const auto fair = fairShares(instance, profile);
  for (ProjectIndex p = 0; p < instance.numProjects(); ++p) {
    if (allocation.contains(p)) continue;
    const bool allShort =
        std::all_of(profile.supporters(p).begin(), profile.supporters(p).end(),
                    [&](AgentIndex i) { return have[i] + profile.unitShare(p) < fair[i]; });
    if (allShort) return {Axiom::LocalFS, false, ProjectWitness{p}};
  }
  return {Axiom::LocalFS, true, std::nullopt};
}

inline AxiomReport checkStrongEjs(const Instance& instance, const Profile& profile,
                                  const ProjectSet& allocation, const CheckOptions& options = {}) {
  detail::requireFeasible(instance, allocation);
  const auto have = shares(instance, profile, allocation);
  const std::size_t m = instance.numProjects();
  auto w = detail::scanCohesive(
      instance, profile, options, "Strong-EJS",
      [&](Mask sub, const std::vector<AgentIndex>& group,
          std::size_t need) -> std::optional<GroupWitness> {
        const Rational deserved = maskGroupShare(profile, sub);
        for (AgentIndex i : group) {
          if (have[i] >= deserved) continue;
          // Smallest cohesive group around the failing agent.
          std::vector<AgentIndex> members{i};
          for (AgentIndex j : group) {
            if (members.size() == need) break;
            if (j != i) members.push_back(j);
          }
          std::sort(members.begin(), members.end());
          return GroupWitness{ProjectSet::fromMask(m, sub), std::move(members), std::nullopt,
                              deserved};
        }
        return std::nullopt;
      });
  return detail::fromGroupWitness(Axiom::StrongEJS, std::move(w));
}

inline AxiomReport checkEjs(const Instance& instance, const Profile& profile,
                            const ProjectSet& allocation, const CheckOptions& options = {}) {
  detail::requireFeasible(instance, allocation);
  const auto have = shares(instance, profile, allocation);
  const std::size_t m = instance.numProjects();
  auto w = detail::scanCohesive(
      instance, profile, options, "EJS",
      [&](Mask sub, const std::vector<AgentIndex>& group,
          std::size_t need) -> std::optional<GroupWitness> {
        const Rational deserved = maskGroupShare(profile, sub);
        std::vector<AgentIndex> failing;
        for (AgentIndex i : group) {
          if (have[i] < deserved) failing.push_back(i);
        }
        if (failing.size() < need) return std::nullopt;
        failing.resize(need);
        return GroupWitness{ProjectSet::fromMask(m, sub), std::move(failing), std::nullopt,
                            deserved};
      });
  return detail::fromGroupWitness(Axiom::EJS, std::move(w));
}

/// Uses >= when one extra project is added, so adding a project that exactly
/// meets the deserved share is enough.
inline AxiomReport checkEjs1(const Instance& instance, const Profile& profile,
                             const ProjectSet& allocation, const CheckOptions& options = {}) {
  detail::requireFeasible(instance, allocation);
  auto best = shares(instance, profile, allocation);
  for (AgentIndex i = 0; i < profile.numAgents(); ++i) {
    best[i] += detail::maxMarginal(profile, allocation, i);
  }
  const std::size_t m = instance.numProjects();
  auto w = detail::scanCohesive(
      instance, profile, options, "EJS-1",
      [&](Mask sub, const std::vector<AgentIndex>& group,
          std::size_t need) -> std::optional<GroupWitness> {
        const Rational deserved = maskGroupShare(profile, sub);
        std::vector<AgentIndex> failing;
        for (AgentIndex i : group) {
          if (best[i] < deserved) failing.push_back(i);
        }
        if (failing.size() < need) return std::nullopt;
        failing.resize(need);
        return GroupWitness{ProjectSet::fromMask(m, sub), std::move(failing), std::nullopt,
                            deserved};
      });
  return detail::fromGroupWitness(Axiom::EJS1, std::move(w));
}

inline AxiomReport checkLocalEjs(const Instance& instance, const Profile& profile,
                                 const ProjectSet& allocation, const CheckOptions& options = {}) {
  detail::requireFeasible(instance, allocation);
  const auto have = shares(instance, profile, allocation);
  const std::size_t m = instance.numProjects();
  const Mask chosen = allocation.mask();
  auto w = detail::scanCohesive(
      instance, profile, options, "Local-EJS",
      [&](Mask sub, const std::vector<AgentIndex>& group,
          std::size_t need) -> std::optional<GroupWitness> {
        const Rational deserved = maskGroupShare(profile, sub);
        for (Mask rest = sub & ~chosen; rest != 0; rest &= rest - 1) {
          const auto p = static_cast<ProjectIndex>(std::countr_zero(rest));
          std::vector<AgentIndex> failing;
          for (AgentIndex i : group) {
            if (have[i] + profile.unitShare(p) < deserved) failing.push_back(i);
          }
          if (failing.size() >= need) {
            failing.resize(need);
            return GroupWitness{ProjectSet::fromMask(m, sub), std::move(failing), p, deserved};
          }
        }
        return std::nullopt;
      });
  return detail::fromGroupWitness(Axiom::LocalEJS, std::move(w));
}

/// Checks a claimed price system against all five priceability conditions.
inline bool verifyPriceSystem(const Instance& instance, const Profile& profile,
                              const ProjectSet& allocation, const PriceSystem& prices) {
  detail::requireFeasible(instance, allocation);
  if (prices.allowance < 0) throw InputError("negative allowance");
  std::vector<Rational> spent(profile.numAgents());
  std::vector<Rational> collected(instance.numProjects());
  for (const auto& [key, amount] : prices.payment) {
    const auto [i, p] = key;
    profile.checkAgent(i);
    if (p >= instance.numProjects()) throw InputError("payment for unknown project");
    if (amount < 0) throw InputError("negative payment");
    if (amount == 0) continue;
    if (!profile.approves(i, p)) return false;    // C1
    if (!allocation.contains(p)) return false;    // C2
    if (amount > prices.allowance) return false;  // payments lie in [0, allowance]
    spent[i] += amount;
    collected[p] += amount;
  }
  for (AgentIndex i = 0; i < profile.numAgents(); ++i) {
    if (spent[i] > prices.allowance) return false;  // C3
  }
  for (ProjectIndex p : allocation) {
    if (collected[p] != Rational(instance.cost(p))) return false;  // C4
  }
  for (ProjectIndex p = 0; p < instance.numProjects(); ++p) {
    if (allocation.contains(p)) continue;
    Rational unspent = 0;
    for (AgentIndex i : profile.supporters(p)) unspent += prices.allowance - spent[i];
    if (unspent > Rational(instance.cost(p))) return false;  // C5
  }
  return true;
}

/// Decides priceability as an exact linear feasibility problem in the
/// allowance and the payments of supporters to selected projects.
inline AxiomReport checkPriceable(const Instance& instance, const Profile& profile,
                                  const ProjectSet& allocation, const CheckOptions& options = {}) {
  detail::requireFeasible(instance, allocation);
  if (allocation.size() > options.maxSelectedForPrices ||
      profile.numAgents() > options.maxAgentsForPrices) {
    throw SizeError("priceability: " + std::to_string(allocation.size()) + " selected projects / " +
                    std::to_string(profile.numAgents()) + " agents exceed the limit of " +
                    std::to_string(options.maxSelectedForPrices) + " / " +
                    std::to_string(options.maxAgentsForPrices));
  }
  // Variable 0 is the allowance; then one variable per (supporter, selected project).
  std::vector<std::pair<AgentIndex, ProjectIndex>> pairs;
  std::vector<std::vector<std::size_t>> varsOfAgent(profile.numAgents());
  for (ProjectIndex p : allocation) {
    for (AgentIndex i : profile.supporters(p)) {
      pairs.emplace_back(i, p);
      varsOfAgent[i].push_back(pairs.size());
    }
  }
  FeasibilityProblem lp(pairs.size() + 1);
  for (AgentIndex i = 0; i < profile.numAgents(); ++i) {
    LinearRow row{{{0, Rational(-1)}}, Sense::LessEqual, Rational(0)};
    for (std::size_t v : varsOfAgent[i]) row.terms.emplace_back(v, Rational(1));
    lp.addRow(std::move(row));
  }
  std::size_t var = 1;
  for (ProjectIndex p : allocation) {
    LinearRow row{{}, Sense::Equal, Rational(instance.cost(p))};
    for (std::size_t k = 0; k < profile.supporterCount(p); ++k) row.terms.emplace_back(var++, 1);
    lp.addRow(std::move(row));
  }
  for (ProjectIndex p = 0; p < instance.numProjects(); ++p) {
    if (allocation.contains(p)) continue;
    const auto& sup = profile.supporters(p);
    LinearRow row{{{0, Rational(static_cast<long long>(sup.size()))}}, Sense::LessEqual,
                  Rational(instance.cost(p))};
    for (AgentIndex i : sup) {
      for (std::size_t v : varsOfAgent[i]) row.terms.emplace_back(v, Rational(-1));
    }
    lp.addRow(std::move(row));
  }

  auto solution = lp.solve();
  if (!solution) return {Axiom::Priceable, false, std::nullopt};
  PriceSystem prices{(*solution)[0], {}};
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if ((*solution)[k + 1] != 0) prices.payment[pairs[k]] = (*solution)[k + 1];
  }
  return {Axiom::Priceable, true, std::move(prices)};
}

inline AxiomReport checkAxiom(Axiom axiom, const Instance& instance, const Profile& profile,
                              const ProjectSet& allocation, const CheckOptions& options = {}) {
  switch (axiom) {
    case Axiom::FS: return checkFs(instance, profile, allocation);
    case Axiom::FS1: return checkFs1(instance, profile, allocation);
    case Axiom::LocalFS: return checkLocalFs(instance, profile, allocation);
    case Axiom::StrongEJS: return checkStrongEjs(instance, profile, allocation, options);
    case Axiom::EJS: return checkEjs(instance, profile, allocation, options);
    case Axiom::EJS1: return checkEjs1(instance, profile, allocation, options);
    case Axiom::LocalEJS: return checkLocalEjs(instance, profile, allocation, options);
    case Axiom::Priceable: return checkPriceable(instance, profile, allocation, options);
  }
  throw InputError("unknown axiom");
}

}  // namespace pbshare
