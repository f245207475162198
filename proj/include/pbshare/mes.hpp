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

// Method of Equal Shares, one engine for three contribution bases.
//
// Every agent starts with an endowment of b/n. For an unselected project p
// and a rate alpha, supporter i offers min(b/n - load_i, alpha * basis_i(p)).
// Each round selects the project whose cost is covered at the smallest alpha
// and charges the offers. The run stops when no project can be covered.
//
//   Share: basis_i(p) = c(p) / |supporters(p)|
//   Card:  basis_i(p) = 1
//   Cost:  basis_i(p) = c(p)

#pragma once

#include <algorithm>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "pbshare/core.hpp"
#include "pbshare/tie_break.hpp"

namespace pbshare {

enum class ContributionKind { Share, Card, Cost };

inline std::string_view toString(ContributionKind kind) {
  switch (kind) {
    case ContributionKind::Share: return "share";
    case ContributionKind::Card: return "card";
    case ContributionKind::Cost: return "cost";
  }
  return "?";
}

struct MesRound {
  ProjectIndex project = 0;
  Rational alpha;
  /// (agent, amount) for every supporter, ascending by agent.
  std::vector<std::pair<AgentIndex, Rational>> payments;
};

struct MesState {
  Allocation selected;
  std::vector<Rational> load;
  std::vector<MesRound> trace;

  static MesState initial(const Instance& instance, const Profile& profile) {
    return MesState{Allocation{instance.emptySet(), 0},
                    std::vector<Rational>(profile.numAgents()), {}};
  }
};

struct MesOptions {
  /// When nonempty, alpha ties go to the project listed first here instead
  /// of the default approval-count / canonical-order rule.
  std::vector<ProjectIndex> priority;
};

inline Rational contributionBasis(const Instance& instance, const Profile& profile,
                                  ContributionKind kind, ProjectIndex p) {
  switch (kind) {
    case ContributionKind::Share: return profile.unitShare(p);
    case ContributionKind::Card: return Rational(1);
    case ContributionKind::Cost: return Rational(instance.cost(p));
  }
  return Rational(0);
}

/// Smallest alpha >= 0 with sum_i min(b/n - load_i, alpha * basis) = c(p)
/// over the supporters of p, or nullopt when their remaining endowments
/// cannot cover c(p). Solved exactly on the sorted breakpoints.
inline std::optional<Rational> minAffordableAlpha(const Instance& instance, const Profile& profile,
                                                  ContributionKind kind, const MesState& state,
                                                  ProjectIndex p) {
  if (p >= instance.numProjects()) throw InputError("unknown project index");
  if (state.selected.selected.contains(p)) throw InputError("project is already selected");
  const Rational basis = contributionBasis(instance, profile, kind, p);
  const Rational target(instance.cost(p));

  struct Offer {
    Rational breakpoint;  // alpha at which the agent's remaining endowment binds
    Rational remaining;
  };
  std::vector<Offer> offers;
  Rational available = 0;
  for (AgentIndex i : profile.supporters(p)) {
    Rational remaining = profile.budgetPerAgent() - state.load[i];
    available += remaining;
    offers.push_back({remaining / basis, std::move(remaining)});
  }
  if (available < target) return std::nullopt;

  std::sort(offers.begin(), offers.end(),
            [](const Offer& a, const Offer& b) { return a.breakpoint < b.breakpoint; });
  Rational capped = 0;
  Rational activeWeight = basis * static_cast<long long>(offers.size());
  for (const Offer& offer : offers) {
    Rational alpha = (target - capped) / activeWeight;
    if (alpha <= offer.breakpoint) return alpha;
    capped += offer.remaining;
    activeWeight -= basis;
  }
  // Unreachable: the last segment always solves when available >= target.
  return std::nullopt;
}

namespace detail {

inline bool mesPrefers(const Profile& profile, const MesOptions& options, ProjectIndex a,
                       ProjectIndex b) {
  if (options.priority.empty()) return tieBreakPrefers(profile, a, b);
  auto rank = [&](ProjectIndex p) {
    auto it = std::find(options.priority.begin(), options.priority.end(), p);
    return static_cast<std::size_t>(it - options.priority.begin());
  };
  const auto ra = rank(a);
  const auto rb = rank(b);
  if (ra != rb) return ra < rb;
  return tieBreakPrefers(profile, a, b);
}

}  // namespace detail

/// Runs MES to termination. The result is not completed afterwards.
inline MesState runMes(const Instance& instance, const Profile& profile, ContributionKind kind,
                       const MesOptions& options = {}) {
  MesState state = MesState::initial(instance, profile);
  const std::size_t m = instance.numProjects();
  while (true) {
    std::optional<ProjectIndex> best;
    Rational bestAlpha;
    for (ProjectIndex p = 0; p < m; ++p) {
      if (state.selected.selected.contains(p)) continue;
      auto alpha = minAffordableAlpha(instance, profile, kind, state, p);
      if (!alpha) continue;
      if (!best || *alpha < bestAlpha ||
          (*alpha == bestAlpha && detail::mesPrefers(profile, options, p, *best))) {
        best = p;
        bestAlpha = std::move(*alpha);
      }
    }
    if (!best) break;

    const ProjectIndex p = *best;
    const Rational basis = contributionBasis(instance, profile, kind, p);
    MesRound round{p, bestAlpha, {}};
    for (AgentIndex i : profile.supporters(p)) {
      Rational pay = std::min(profile.budgetPerAgent() - state.load[i], bestAlpha * basis);
      state.load[i] += pay;
      round.payments.emplace_back(i, std::move(pay));
    }
    state.selected.selected.insert(p);
    state.selected.totalCost += instance.cost(p);
    state.trace.push_back(std::move(round));
  }
  return state;
}

}  // namespace pbshare
