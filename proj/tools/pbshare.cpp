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

// pbshare command-line tool.
//
// Exit codes: 0 success (or verdict true), 1 verdict false for check/exists,
// 2 usage or input error, 3 size cap exceeded.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pbshare/pbshare.hpp"

namespace {

using namespace pbshare;

constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSize = 3;

struct Source {
  std::string file;
  std::string fixture;
  std::int64_t scale = kDefaultScale;
  std::string preprocess = "none";

  void attach(CLI::App* cmd) {
    cmd->add_option("file", file, "Pabulib .pb file");
    cmd->add_option("--fixture", fixture, "built-in example instead of a file (EX1..EX16)");
    cmd->add_option("--scale", scale, "multiplier turning decimal costs into integers")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--preprocess", preprocess, "none|t1|t5|t10|cohesive");
  }

  Election load() const {
    if (file.empty() == fixture.empty()) throw InputError("give exactly one of FILE or --fixture");
    Election election;
    if (!fixture.empty()) {
      election = pbshare::fixture(fixture).election;
    } else {
      ParsedPb parsed = loadPb(file, scale);
      for (const auto& w : parsed.warnings) std::cerr << w << "\n";
      election = std::move(parsed.election);
    }
    const PreprocessSpec spec = PreprocessSpec::parse(preprocess);
    if (spec.mode == PreprocessSpec::Mode::None) return election;
    Preprocessed pre = pbshare::preprocess(election.instance, election.profile, spec);
    for (const auto& id : pre.removed) std::cerr << "removed " << id << "\n";
    return std::move(pre.election);
  }
};

Axiom parseAxiom(std::string text) {
  for (auto& ch : text) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  for (Axiom a : kAllAxioms) {
    std::string name(toString(a));
    for (auto& ch : name) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    std::string compact;
    for (char ch : name) {
      if (ch != '-') compact += ch;
    }
    if (text == name || text == compact) return a;
  }
  throw InputError("unknown axiom '" + text + "'");
}

ProjectSet parseAllocation(const Instance& instance, const std::string& text) {
  std::vector<std::string> ids;
  std::stringstream in(text);
  std::string id;
  while (std::getline(in, id, ',')) {
    if (!id.empty()) ids.push_back(id);
  }
  return instance.setOf(ids);
}

SearchMethod parseMethod(const std::string& text) {
  if (text == "bnb") return SearchMethod::BranchAndBound;
  if (text == "exhaustive") return SearchMethod::Exhaustive;
  throw InputError("unknown method '" + text + "'");
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out, std::ios::binary);
  if (!file) throw InputError("cannot write " + out);
  file << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fair share and proportionality tools for participatory budgeting"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out;
  app.add_option("--out", out, "write the main output to this file");

  Source source;

  auto* parseCmd = app.add_subcommand("parse", "summarise a .pb file");
  source.attach(parseCmd);

  std::string ruleName = "mes-share";
  auto* ruleCmd = app.add_subcommand("rule", "run a voting rule");
  source.attach(ruleCmd);
  ruleCmd->add_option("--rule", ruleName, "mes-share|mes-card|mes-cost|phragmen|greedy|greedy-ejs");

  std::string axiomName = "all";
  std::string allocationText;
  auto* checkCmd = app.add_subcommand("check", "check fairness criteria of an allocation");
  source.attach(checkCmd);
  checkCmd->add_option("--axiom", axiomName, "fs|fs1|local-fs|strong-ejs|ejs|ejs1|local-ejs|priceable|all");
  checkCmd->add_option("--allocation", allocationText, "comma separated project ids")->required();

  std::string objective = "capped";
  std::string method = "bnb";
  auto* optCmd = app.add_subcommand("opt", "exact optimisation");
  source.attach(optCmd);
  optCmd->add_option("--objective", objective, "capped|ratio|l1");
  optCmd->add_option("--method", method, "bnb|exhaustive");

  std::string existsAxiom = "fs";
  auto* existsCmd = app.add_subcommand("exists", "search for an FS or FS-1 allocation");
  source.attach(existsCmd);
  existsCmd->add_option("--axiom", existsAxiom, "fs|fs1");

  ExperimentConfig config;
  std::string dataDir;
  std::vector<std::string> preprocessNames{"none"};
  std::vector<std::string> ruleNames;
  std::string svgDir;
  bool noOpt = false;
  auto* expCmd = app.add_subcommand("experiment", "evaluate rules over a corpus of .pb files");
  expCmd->add_option("data", dataDir, "directory of .pb files")->required();
  expCmd->add_option("--preprocess", preprocessNames, "none|t1|t5|t10|cohesive (repeatable)");
  expCmd->add_option("--rule", ruleNames, "rules to run (repeatable; default all)");
  expCmd->add_option("--max-projects", config.maxProjects, "skip larger instances");
  expCmd->add_option("--scale", config.scale, "cost multiplier")->check(CLI::PositiveNumber);
  expCmd->add_option("--workers", config.workers, "parallel workers (0 = all cores)");
  expCmd->add_option("--svg", svgDir, "directory for SVG plots");
  expCmd->add_flag("--no-opt", noOpt, "skip the exact optimisers");

  std::string fixtureDir;
  auto* fixturesCmd = app.add_subcommand("fixtures", "list the built-in examples or write them as .pb files");
  fixturesCmd->add_option("--dir", fixtureDir, "write EX*.pb files here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (parseCmd->parsed()) {
      const Election e = source.load();
      std::ostringstream text;
      text << "agents: " << e.profile.numAgents() << "\nprojects: " << e.instance.numProjects()
           << "\nbudget: " << e.instance.budget() << "\ntotal_cost: " << e.instance.totalCost() << "\n";
      for (ProjectIndex p = 0; p < e.instance.numProjects(); ++p) {
        text << "project " << e.instance.id(p) << ": cost " << e.instance.cost(p) << " supporters "
             << e.profile.supporterCount(p) << "\n";
      }
      emit(text.str(), out);
      return 0;
    }
    if (ruleCmd->parsed()) {
      const Election e = source.load();
      const Rule rule = parseRule(ruleName);
      emit(formatRuleOutcome(e.instance, e.profile, rule, runRuleTraced(rule, e.instance, e.profile)), out);
      return 0;
    }
    if (checkCmd->parsed()) {
      const Election e = source.load();
      const ProjectSet allocation = parseAllocation(e.instance, allocationText);
      std::vector<Axiom> axioms;
      if (axiomName == "all") {
        axioms.assign(std::begin(kAllAxioms), std::end(kAllAxioms));
      } else {
        axioms.push_back(parseAxiom(axiomName));
      }
      std::string text;
      bool all = true;
      for (Axiom a : axioms) {
        const AxiomReport report = checkAxiom(a, e.instance, e.profile, allocation);
        all = all && report.verdict;
        text += formatAxiomReport(e.instance, report);
      }
      emit(text, out);
      return all ? 0 : kExitFalse;
    }
    if (optCmd->parsed()) {
      const Election e = source.load();
      const SearchMethod m = parseMethod(method);
      OptResult result;
      if (objective == "capped") {
        result = maxCappedShare(e.instance, e.profile, m);
      } else if (objective == "ratio") {
        result = maxCappedRatio(e.instance, e.profile, m);
      } else if (objective == "l1") {
        result = minL1Distance(e.instance, e.profile, m);
      } else {
        throw InputError("unknown objective '" + objective + "'");
      }
      emit("objective_kind: " + objective + "\n" + formatOptResult(e.instance, result), out);
      return 0;
    }
    if (existsCmd->parsed()) {
      const Election e = source.load();
      std::optional<Allocation> found;
      if (existsAxiom == "fs") {
        found = existsFs(e.instance, e.profile);
      } else if (existsAxiom == "fs1") {
        found = existsFs1(e.instance, e.profile);
      } else {
        throw InputError("exists supports fs and fs1, not '" + existsAxiom + "'");
      }
      emit(found ? "exists: true\nselected: " + formatSet(e.instance, found->selected) + "\n"
                 : std::string("exists: false\n"),
           out);
      return found ? 0 : kExitFalse;
    }
    if (expCmd->parsed()) {
      config.dataDir = dataDir;
      config.optimizer = !noOpt;
      config.preprocess.clear();
      for (const auto& name : preprocessNames) config.preprocess.push_back(PreprocessSpec::parse(name));
      if (!ruleNames.empty()) {
        config.rules.clear();
        for (const auto& name : ruleNames) config.rules.push_back(parseRule(name));
      }
      const ExperimentResult result = runExperiment(config);
      for (const auto& w : result.warnings) std::cerr << w << "\n";
      for (const auto& d : result.dropped) std::cerr << "dropped " << d.path.generic_string() << ": " << d.reason << "\n";
      emit(experimentCsv(result.rows), out);
      if (!svgDir.empty()) writeSvgPlots(result.rows, svgDir);
      return 0;
    }
    if (fixturesCmd->parsed()) {
      std::ostringstream text;
      for (const Fixture& f : fixtureRegistry()) {
        text << f.name << ": " << f.note << "\n";
        if (!fixtureDir.empty()) {
          std::filesystem::create_directories(fixtureDir);
          std::ofstream file(std::filesystem::path(fixtureDir) / (f.name + ".pb"), std::ios::binary);
          file << writePb(f.election.instance, f.election.profile, f.name);
        }
      }
      emit(text.str(), out);
      return 0;
    }
  } catch (const SizeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSize;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
