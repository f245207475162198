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

// Exact optimisation over feasible allocations.
//
// Two search methods share every objective: plain enumeration of all
// feasible subsets, and depth-first branch and bound. Objectives are sums of
// per-agent terms of the agent's share. Along a branch an agent's share can
// only grow, and it can never exceed the share of (decided-in plus every
// undecided project that still fits), which yields the bounds. Ties between
// equally good allocations go to the smallest mask in both methods.

#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

#include "pbshare/axioms.hpp"
#include "pbshare/core.hpp"
#include "pbshare/subsets.hpp"
#include "pbshare/tie_break.hpp"

namespace pbshare {

enum class SearchMethod { Exhaustive, BranchAndBound };

struct OptOptions {
  std::size_t maxProjectsBranchAndBound = 24;
  std::size_t maxProjectsExhaustive = kDefaultEnumerationCap;
};

struct OptResult {
  Allocation allocation;
  Rational objective;
  std::uint64_t nodesExplored = 0;
  bool optimalProven = false;
};

/// Calls `visit(mask, cost)` for every feasible subset exactly once, in
/// ascending mask order, pruning supersets of over-budget prefixes.
template <typename Visit>
void forEachFeasible(const Instance& instance, Visit&& visit,
                     std::size_t cap = kDefaultEnumerationCap) {
  const std::size_t m = instance.numProjects();
  checkEnumerationCap(m, cap, "feasible enumeration");
  // Deciding the highest project first keeps the output in ascending order.
  std::function<void(std::size_t, Mask, Cost)> recurse = [&](std::size_t k, Mask mask, Cost cost) {
    if (k == 0) {
      visit(mask, cost);
      return;
    }
    const auto p = static_cast<ProjectIndex>(k - 1);
    recurse(k - 1, mask, cost);
    if (cost + instance.cost(p) <= instance.budget()) {
      recurse(k - 1, mask | (Mask{1} << p), cost + instance.cost(p));
    }
  };
  recurse(m, 0, 0);
}

inline std::vector<Allocation> enumerateFeasible(const Instance& instance,
                                                 std::size_t cap = kDefaultEnumerationCap) {
  std::vector<Allocation> out;
  const std::size_t m = instance.numProjects();
  forEachFeasible(
      instance,
      [&](Mask mask, Cost cost) { out.push_back({ProjectSet::fromMask(m, mask), cost}); }, cap);
  return out;
}

namespace detail {

/// Per-agent objective term. `Maximize` terms are nondecreasing in the share.
struct TermSpec {
  bool maximize = true;
  /// term(i, share)
  std::function<Rational(AgentIndex, const Rational&)> term;
  /// Best possible term for an agent whose final share lies in [low, high].
  std::function<Rational(AgentIndex, const Rational&, const Rational&)> bestInRange;
  /// Multiplier applied to the summed terms (e.g. 1/n for averages).
  Rational scale = 1;
};

inline bool improves(const TermSpec& spec, const Rational& candidate, const Rational& incumbent) {
  return spec.maximize ? candidate > incumbent : candidate < incumbent;
}

inline OptResult exhaustiveSearch(const Instance& instance, const Profile& profile,
                                  const TermSpec& spec, const OptOptions& options) {
  const std::size_t m = instance.numProjects();
  const std::size_t n = profile.numAgents();
  std::optional<Mask> bestMask;
  Cost bestCost = 0;
  Rational best;
  std::uint64_t visited = 0;
  std::vector<Rational> have(n);
  forEachFeasible(
      instance,
      [&](Mask mask, Cost cost) {
        ++visited;
        std::fill(have.begin(), have.end(), Rational(0));
        for (Mask rest = mask; rest != 0; rest &= rest - 1) {
          const auto p = static_cast<ProjectIndex>(std::countr_zero(rest));
          for (AgentIndex i : profile.supporters(p)) have[i] += profile.unitShare(p);
        }
        Rational value = 0;
        for (AgentIndex i = 0; i < n; ++i) value += spec.term(i, have[i]);
        if (!bestMask || improves(spec, value, best)) {
          bestMask = mask;
          bestCost = cost;
          best = std::move(value);
        }
      },
      options.maxProjectsExhaustive);
  return {Allocation{ProjectSet::fromMask(m, *bestMask), bestCost}, best * spec.scale, visited,
          true};
}

class BranchAndBound {
 public:
  BranchAndBound(const Instance& instance, const Profile& profile, const TermSpec& spec)
      : instance_(instance), profile_(profile), spec_(spec), have_(profile.numAgents()) {
    order_.resize(instance.numProjects());
    std::iota(order_.begin(), order_.end(), ProjectIndex{0});
    std::stable_sort(order_.begin(), order_.end(), [&](ProjectIndex a, ProjectIndex b) {
      return tieBreakPrefers(profile, a, b);
    });
  }

  OptResult run() {
    search(0, 0, 0);
    return {Allocation{ProjectSet::fromMask(instance_.numProjects(), bestMask_), bestCost_},
            best_ * spec_.scale, nodes_, true};
  }

 private:
  Rational bound(std::size_t depth, Cost cost) const {
    std::vector<Rational> high = have_;
    const Cost room = instance_.budget() - cost;
    for (std::size_t d = depth; d < order_.size(); ++d) {
      const ProjectIndex p = order_[d];
      if (instance_.cost(p) > room) continue;
      for (AgentIndex i : profile_.supporters(p)) high[i] += profile_.unitShare(p);
    }
    Rational total = 0;
    for (AgentIndex i = 0; i < have_.size(); ++i) total += spec_.bestInRange(i, have_[i], high[i]);
    return total;
  }

  bool accept(const Rational& value, Mask mask) const {
    if (!hasBest_) return true;
    if (improves(spec_, value, best_)) return true;
    return value == best_ && mask < bestMask_;
  }

  /// Returns the best objective found in this subtree (for the admissibility check).
  std::optional<Rational> search(std::size_t depth, Mask mask, Cost cost) {
    ++nodes_;
    if (depth == order_.size()) {
      Rational value = 0;
      for (AgentIndex i = 0; i < have_.size(); ++i) value += spec_.term(i, have_[i]);
      if (accept(value, mask)) {
        hasBest_ = true;
        best_ = value;
        bestMask_ = mask;
        bestCost_ = cost;
      }
      return value;
    }
    const Rational limit = bound(depth, cost);
    if (hasBest_ && improves(spec_, best_, limit)) return std::nullopt;

    std::optional<Rational> subtreeBest;
    auto merge = [&](std::optional<Rational> v) {
      if (v && (!subtreeBest || improves(spec_, *v, *subtreeBest))) subtreeBest = std::move(v);
    };
    const ProjectIndex p = order_[depth];
    if (cost + instance_.cost(p) <= instance_.budget()) {
      for (AgentIndex i : profile_.supporters(p)) have_[i] += profile_.unitShare(p);
      merge(search(depth + 1, mask | (Mask{1} << p), cost + instance_.cost(p)));
      for (AgentIndex i : profile_.supporters(p)) have_[i] -= profile_.unitShare(p);
    }
    merge(search(depth + 1, mask, cost));
    assert(!subtreeBest || !improves(spec_, *subtreeBest, limit));
    return subtreeBest;
  }

  const Instance& instance_;
  const Profile& profile_;
  const TermSpec& spec_;
  std::vector<ProjectIndex> order_;
  std::vector<Rational> have_;
  bool hasBest_ = false;
  Rational best_;
  Mask bestMask_ = 0;
  Cost bestCost_ = 0;
  std::uint64_t nodes_ = 0;
};

inline OptResult optimize(const Instance& instance, const Profile& profile, SearchMethod method,
                          const TermSpec& spec, const OptOptions& options) {
  if (method == SearchMethod::Exhaustive) {
    return exhaustiveSearch(instance, profile, spec, options);
  }
  checkEnumerationCap(instance.numProjects(), options.maxProjectsBranchAndBound, "branch and bound");
  return BranchAndBound(instance, profile, spec).run();
}

/// Maximising sum_i min(share_i, cap_i) with monotone bound.
inline TermSpec cappedSpec(std::vector<Rational> caps, Rational scale) {
  auto shared = std::make_shared<std::vector<Rational>>(std::move(caps));
  TermSpec spec;
  spec.maximize = true;
  spec.term = [shared](AgentIndex i, const Rational& s) { return std::min(s, (*shared)[i]); };
  spec.bestInRange = [shared](AgentIndex i, const Rational&, const Rational& high) {
    return std::min(high, (*shared)[i]);
  };
  spec.scale = std::move(scale);
  return spec;
}

}  // namespace detail

/// Maximises sum_i min{b/n, share(pi, i)}. The optimum is b iff some
/// allocation gives every agent at least b/n.
inline OptResult maxCappedShare(const Instance& instance, const Profile& profile,
                                SearchMethod method, const OptOptions& options = {}) {
  std::vector<Rational> caps(profile.numAgents(), profile.budgetPerAgent());
  return detail::optimize(instance, profile, method, detail::cappedSpec(std::move(caps), 1),
                          options);
}

/// Maximises the average capped fair share ratio
/// (1/n) sum_i min(share_i / (ratio * fairshare_i), 1); agents with fair
/// share 0 count as 1.
inline OptResult maxCappedRatio(const Instance& instance, const Profile& profile,
                                SearchMethod method, const Rational& ratio = 1,
                                const OptOptions& options = {}) {
  if (ratio <= 0) throw InputError("approximation ratio must be positive");
  const std::size_t n = profile.numAgents();
  auto targets = std::make_shared<std::vector<Rational>>();
  for (AgentIndex i = 0; i < n; ++i) targets->push_back(ratio * fairShare(instance, profile, i));
  auto term = [targets](AgentIndex i, const Rational& s) -> Rational {
    const Rational& t = (*targets)[i];
    if (t == 0) return 1;
    return std::min(Rational(s / t), Rational(1));
  };
  detail::TermSpec spec;
  spec.maximize = true;
  spec.term = term;
  spec.bestInRange = [term](AgentIndex i, const Rational&, const Rational& high) {
    return term(i, high);
  };
  spec.scale = makeRational(1, static_cast<std::int64_t>(n));
  return detail::optimize(instance, profile, method, spec, options);
}

/// Minimises the average L1 distance (1/n) sum_i |share_i - fairshare_i|.
inline OptResult minL1Distance(const Instance& instance, const Profile& profile,
                               SearchMethod method, const OptOptions& options = {}) {
  const std::size_t n = profile.numAgents();
  auto fair = std::make_shared<std::vector<Rational>>(fairShares(instance, profile));
  detail::TermSpec spec;
  spec.maximize = false;
  spec.term = [fair](AgentIndex i, const Rational& s) { return abs(s - (*fair)[i]); };
  spec.bestInRange = [fair](AgentIndex i, const Rational& low, const Rational& high) -> Rational {
    const Rational& f = (*fair)[i];
    if (f < low) return low - f;
    if (f > high) return f - high;
    return 0;
  };
  spec.scale = makeRational(1, static_cast<std::int64_t>(n));
  return detail::optimize(instance, profile, method, spec, options);
}

/// An FS allocation, if one exists. FS holds iff every agent's share reaches
/// its fair share, i.e. iff sum_i min(share_i, fairshare_i) attains
/// sum_i fairshare_i; the maximiser of that capped sum is then FS.
inline std::optional<Allocation> existsFs(const Instance& instance, const Profile& profile,
                                          SearchMethod method = SearchMethod::BranchAndBound,
                                          const OptOptions& options = {}) {
  auto fair = fairShares(instance, profile);
  Rational target = 0;
  for (const auto& f : fair) target += f;
  auto result =
      detail::optimize(instance, profile, method, detail::cappedSpec(std::move(fair), 1), options);
  if (result.objective != target) return std::nullopt;
  return result.allocation;
}

/// First FS-1 allocation in canonical subset order, if any.
inline std::optional<Allocation> existsFs1(const Instance& instance, const Profile& profile,
                                           const OptOptions& options = {}) {
  const std::size_t m = instance.numProjects();
  std::optional<Allocation> found;
  forEachFeasible(
      instance,
      [&](Mask mask, Cost cost) {
        if (found) return;
        ProjectSet set = ProjectSet::fromMask(m, mask);
        if (checkFs1(instance, profile, set).verdict) found = Allocation{std::move(set), cost};
      },
      options.maxProjectsExhaustive);
  return found;
}

}  // namespace pbshare
