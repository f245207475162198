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

// Named access to every rule, with a textual per-round trace.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pbshare/greedy.hpp"
#include "pbshare/greedy_ejs.hpp"
#include "pbshare/mes.hpp"
#include "pbshare/phragmen.hpp"

namespace pbshare {

enum class Rule { MesShare, MesCard, MesCost, Phragmen, Greedy, GreedyEjs };

inline constexpr Rule kAllRules[] = {Rule::MesShare, Rule::MesCard, Rule::MesCost,
                                     Rule::Phragmen, Rule::Greedy,  Rule::GreedyEjs};

inline std::string_view toString(Rule rule) {
  switch (rule) {
    case Rule::MesShare: return "mes-share";
    case Rule::MesCard: return "mes-card";
    case Rule::MesCost: return "mes-cost";
    case Rule::Phragmen: return "phragmen";
    case Rule::Greedy: return "greedy";
    case Rule::GreedyEjs: return "greedy-ejs";
  }
  return "?";
}

inline Rule parseRule(std::string_view text) {
  for (Rule r : kAllRules) {
    if (toString(r) == text) return r;
  }
  throw InputError("unknown rule '" + std::string(text) + "'");
}

struct RuleOutcome {
  Allocation allocation;
  std::vector<std::string> trace;
};

namespace detail {

inline std::string setText(const Instance& instance, const ProjectSet& set) {
  std::string out;
  for (ProjectIndex p : set) out += (out.empty() ? "" : ",") + instance.id(p);
  return out;
}

}  // namespace detail

inline RuleOutcome runRuleTraced(Rule rule, const Instance& instance, const Profile& profile,
                                 std::size_t enumerationCap = kDefaultEnumerationCap) {
  RuleOutcome out;
  auto mes = [&](ContributionKind kind) {
    MesState state = runMes(instance, profile, kind);
    for (const MesRound& round : state.trace) {
      std::string line = "select " + instance.id(round.project) + " alpha " + toString(round.alpha) +
                         " payments";
      for (const auto& [agent, amount] : round.payments) {
        line += " " + std::to_string(agent + 1) + ":" + toString(amount);
      }
      out.trace.push_back(std::move(line));
    }
    out.allocation = std::move(state.selected);
  };
  switch (rule) {
    case Rule::MesShare: mes(ContributionKind::Share); break;
    case Rule::MesCard: mes(ContributionKind::Card); break;
    case Rule::MesCost: mes(ContributionKind::Cost); break;
    case Rule::Phragmen: {
      PhragmenState state = runSequentialPhragmen(instance, profile);
      for (const PhragmenRound& round : state.trace) {
        out.trace.push_back("select " + instance.id(round.project) + " load " +
                            toString(round.newLoad));
      }
      if (state.terminated) out.trace.push_back("stop: an argmin project exceeds the budget");
      out.allocation = std::move(state.selected);
      break;
    }
    case Rule::Greedy: out.allocation = runGreedyApproval(instance, profile); break;
    case Rule::GreedyEjs: {
      GreedyEjsOutcome result = runGreedyEjsTraced(instance, profile, enumerationCap);
      for (const GreedyEjsRound& round : result.trace) {
        std::string line = "select {" + detail::setText(instance, round.projects) + "} group {";
        for (std::size_t k = 0; k < round.group.size(); ++k) {
          line += (k ? "," : "") + std::to_string(round.group[k] + 1);
        }
        out.trace.push_back(line + "} share " + toString(round.groupShare));
      }
      out.allocation = std::move(result.allocation);
      break;
    }
  }
  return out;
}

inline Allocation runRule(Rule rule, const Instance& instance, const Profile& profile,
                          std::size_t enumerationCap = kDefaultEnumerationCap) {
  return runRuleTraced(rule, instance, profile, enumerationCap).allocation;
}

}  // namespace pbshare
