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

// Plain-text "key: value" renderings of rule outcomes, axiom reports and
// optimiser results. Agents print 1-based; rationals print as num/den.

#pragma once

#include <sstream>
#include <string>
#include <variant>

#include "pbshare/axioms.hpp"
#include "pbshare/opt.hpp"
#include "pbshare/rules.hpp"

namespace pbshare {

/// Project ids in canonical order, comma separated.
inline std::string formatSet(const Instance& instance, const ProjectSet& set) {
  return detail::setText(instance, set);
}

inline std::string formatAgents(const std::vector<AgentIndex>& agents) {
  std::string out;
  for (std::size_t k = 0; k < agents.size(); ++k) out += (k ? "," : "") + std::to_string(agents[k] + 1);
  return out;
}

inline std::string formatRuleOutcome(const Instance& instance, const Profile& profile, Rule rule,
                                     const RuleOutcome& outcome) {
  std::ostringstream out;
  out << "rule: " << toString(rule) << "\n";
  out << "selected: " << formatSet(instance, outcome.allocation.selected) << "\n";
  out << "total_cost: " << outcome.allocation.totalCost << "\n";
  const auto have = shares(instance, profile, outcome.allocation.selected);
  for (AgentIndex i = 0; i < have.size(); ++i) {
    out << "share " << (i + 1) << ": " << toString(have[i]) << "\n";
  }
  for (std::size_t r = 0; r < outcome.trace.size(); ++r) {
    out << "round " << (r + 1) << ": " << outcome.trace[r] << "\n";
  }
  return out.str();
}

inline std::string formatAxiomReport(const Instance& instance, const AxiomReport& report) {
  std::ostringstream out;
  out << "axiom: " << toString(report.axiom) << "\n";
  out << "verdict: " << (report.verdict ? "true" : "false") << "\n";
  if (!report.witness) return out.str();
  std::visit(
      [&](const auto& w) {
        using W = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<W, AgentWitness>) {
          out << "witness agent: " << (w.agent + 1) << "\n";
          out << "witness share: " << toString(w.share) << "\n";
          out << "witness required: " << toString(w.required) << "\n";
        } else if constexpr (std::is_same_v<W, ProjectWitness>) {
          out << "witness project: " << instance.id(w.project) << "\n";
        } else if constexpr (std::is_same_v<W, GroupWitness>) {
          out << "witness projects: " << formatSet(instance, w.projects) << "\n";
          out << "witness agents: " << formatAgents(w.agents) << "\n";
          if (w.project) out << "witness project: " << instance.id(*w.project) << "\n";
          out << "witness deserved: " << toString(w.deserved) << "\n";
        } else {
          out << "allowance: " << toString(w.allowance) << "\n";
          for (const auto& [key, amount] : w.payment) {
            out << "payment " << (key.first + 1) << " " << instance.id(key.second) << ": "
                << toString(amount) << "\n";
          }
        }
      },
      *report.witness);
  return out.str();
}

inline std::string formatOptResult(const Instance& instance, const OptResult& result) {
  std::ostringstream out;
  out << "selected: " << formatSet(instance, result.allocation.selected) << "\n";
  out << "total_cost: " << result.allocation.totalCost << "\n";
  out << "objective: " << toString(result.objective) << "\n";
  out << "objective_dec: " << toDecimal(result.objective) << "\n";
  out << "nodes: " << result.nodesExplored << "\n";
  out << "optimal: " << (result.optimalProven ? "true" : "false") << "\n";
  return out.str();
}

}  // namespace pbshare
