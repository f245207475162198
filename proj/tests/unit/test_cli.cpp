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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "pbshare/pabulib.hpp"

namespace pbshare {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun cli(const std::string& args) {
  const std::string command = std::string(PBSHARE_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun run;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return run;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) run.out.append(buffer, got);
  const int status = pclose(pipe);
  run.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return run;
}

std::string fixtureFile(const std::string& name) {
  return (fs::path(PBSHARE_FIXTURE_DIR) / (name + ".pb")).string();
}

TEST(Cli, ShippedFixtureFilesMatchRegistry) {
  for (const auto& f : fixtureRegistry()) {
    const auto parsed = loadPb(fixtureFile(f.name), 1);
    EXPECT_EQ(parsed.election.instance.costs(), f.election.instance.costs()) << f.name;
    EXPECT_EQ(parsed.election.instance.budget(), f.election.instance.budget()) << f.name;
    EXPECT_EQ(parsed.election.profile.ballots(), f.election.profile.ballots()) << f.name;
  }
}

TEST(Cli, Parse) {
  const CliRun r = cli("parse " + fixtureFile("EX1") + " --scale 1");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "agents: 4\nprojects: 3\nbudget: 8\ntotal_cost: 10\n"
            "project p1: cost 6 supporters 3\nproject p2: cost 2 supporters 2\n"
            "project p3: cost 2 supporters 1\n");
}

TEST(Cli, RuleTrace) {
  const CliRun r = cli("rule --fixture EX1 --rule phragmen");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("rule: phragmen\n"), std::string::npos);
  EXPECT_NE(r.out.find("selected: p2,p3\n"), std::string::npos);
  EXPECT_NE(r.out.find("total_cost: 4\n"), std::string::npos);
  EXPECT_EQ(cli("rule --fixture EX1 --rule greedy").out.find("selected: p1,p2\n") == std::string::npos, false);
}

TEST(Cli, CheckExitCodes) {
  EXPECT_EQ(cli("check --fixture EX12 --axiom fs --allocation p1,p2,p3").code, 0);
  const CliRun priceable = cli("check --fixture EX12 --axiom priceable --allocation p1,p2,p3");
  EXPECT_EQ(priceable.code, 1);
  EXPECT_NE(priceable.out.find("verdict: false"), std::string::npos);
  const CliRun localFs = cli("check --fixture EX15 --axiom localfs --allocation p1,p2");
  EXPECT_EQ(localFs.code, 1);
  EXPECT_NE(localFs.out.find("witness project: p4"), std::string::npos);
  EXPECT_EQ(cli("check --fixture EX14 --allocation p1").code, 1);  // all axioms; priceable fails
}

TEST(Cli, ExistsAndOpt) {
  const CliRun fs1 = cli("exists --fixture EX1 --axiom fs");
  EXPECT_EQ(fs1.code, 0);
  EXPECT_EQ(fs1.out, "exists: true\nselected: p1,p3\n");
  EXPECT_EQ(cli("exists --fixture EX16").code, 1);
  EXPECT_EQ(cli("exists --fixture EX2 --axiom fs1").out, "exists: false\n");
  const CliRun opt = cli("opt --fixture EX1 --objective capped --method exhaustive");
  EXPECT_EQ(opt.code, 0);
  EXPECT_NE(opt.out.find("objective: 8/1\n"), std::string::npos);
  EXPECT_NE(opt.out.find("selected: p1,p3\n"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli("").code, 2);
  EXPECT_EQ(cli("rule --fixture EX1 --rule nonsense").code, 2);
  EXPECT_EQ(cli("rule --fixture EX99").code, 2);
  EXPECT_EQ(cli("rule").code, 2);
  EXPECT_EQ(cli("parse /nonexistent/file.pb").code, 2);
  EXPECT_EQ(cli("check --fixture EX1 --allocation p1,p2,p3").code, 2);  // over budget
  EXPECT_EQ(cli("check --fixture EX1 --allocation p9").code, 2);
  EXPECT_EQ(cli("opt --fixture EX1 --method fast").code, 2);
  EXPECT_EQ(cli("rule --fixture EX1 --preprocess t50").code, 2);
}

TEST(Cli, SizeCap) {
  const fs::path file = fs::temp_directory_path() / "pbshare_cli_big.pb";
  std::vector<Cost> costs(25, 1);
  std::vector<int> all;
  for (int p = 1; p <= 25; ++p) all.push_back(p);
  const auto big = makeElection(costs, 3, {all});
  std::ofstream(file) << writePb(big.instance, big.profile);
  EXPECT_EQ(cli("opt " + file.string() + " --scale 1").code, 3);
  EXPECT_EQ(cli("exists " + file.string() + " --scale 1 --axiom fs1").code, 3);
  EXPECT_EQ(cli("rule " + file.string() + " --scale 1 --rule greedy-ejs").code, 3);
  EXPECT_EQ(cli("rule " + file.string() + " --scale 1 --rule greedy").code, 0);
  fs::remove(file);
}

TEST(Cli, ExperimentIsDeterministic) {
  const std::string args = "experiment " + std::string(PBSHARE_FIXTURE_DIR) + " --scale 1 --rule greedy --rule mes-share";
  const CliRun a = cli(args + " --workers 1");
  const CliRun b = cli(args + " --workers 4");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.substr(0, a.out.find('\n')), std::string("file,n,m,preprocess,rule,capped_ratio,capped_ratio_dec,l1_norm,l1_norm_dec,budget_fraction,opt_capped_ratio,opt_l1,ratio_vs_opt,l1_vs_opt,error"));
}

}  // namespace
}  // namespace pbshare
