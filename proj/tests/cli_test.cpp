// Copyright 2026 The potgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Drives the installed command-line tool as a subprocess.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;

struct CliRun {
  int status = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd =
      std::string("'") + POTGAME_CLI_PATH + "' " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string fixture(const char* name) {
  return std::string(POTGAME_FIXTURE_DIR) + "/" + name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("potgame_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(Cli, CheckExitCodes) {
  EXPECT_EQ(run("check " + fixture("cournot3.spec")).status, 0);
  EXPECT_EQ(run("check " + fixture("hetero_cournot.spec")).status, 1);
  EXPECT_EQ(run("check " + fixture("cournot3.spec") + " --checkers funceq").status,
            2);
  EXPECT_GT(run("check /nonexistent.spec").status, 2);
  EXPECT_GT(run("check " + fixture("cournot3.spec") + " --checkers nope").status,
            2);
  EXPECT_GT(run("check").status, 2);
  EXPECT_GT(run("frobnicate").status, 2);
  EXPECT_GT(run("check " + fixture("cournot3.spec") + " --grid 1").status, 2);
}

TEST_F(Cli, ReportOnStdoutIsJson) {
  const CliRun r = run("check " + fixture("cournot3.spec") + " --classify");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("schema"), "potgame.report/1");
  EXPECT_EQ(j.at("body").at("verdict"), "potential");
  EXPECT_TRUE(j.at("body").contains("classification"));
}

TEST_F(Cli, BodiesAreByteIdenticalAcrossRuns) {
  for (const std::string& cmd :
       {"check " + fixture("cournot3.spec") + " --seed 3",
        "build " + fixture("cournot4.spec") + " --seed 3 --nash 2"}) {
    const CliRun a = run(cmd), b = run(cmd);
    ASSERT_EQ(a.status, 0) << cmd;
    EXPECT_EQ(nlohmann::json::parse(a.out).at("body").dump(),
              nlohmann::json::parse(b.out).at("body").dump());
  }
}

TEST_F(Cli, BuildWritesReportAndTable) {
  const fs::path report = dir_ / "r.json", table = dir_ / "phi.csv";
  const CliRun r = run("build " + fixture("cournot4.spec") + " --report " +
                    report.string() + " --table " + table.string());
  ASSERT_EQ(r.status, 0);
  EXPECT_TRUE(r.out.empty());
  const auto j = nlohmann::json::parse(slurp(report));
  EXPECT_EQ(j.at("body").at("command"), "build");
  const std::string csv = slurp(table);
  EXPECT_EQ(csv.rfind("x_1_1,x_2_1,x_3_1,x_4_1,phi\n", 0), 0u);
  EXPECT_NE(csv.find("\n1,1,1,1,22\n"), std::string::npos);
}

TEST_F(Cli, BuildRoutesAndRefusal) {
  EXPECT_EQ(run("build " + fixture("hetero_cournot.spec")).status, 1);
  EXPECT_EQ(run("build " + fixture("cournot4.spec") + " --route t6").status, 2);
  EXPECT_EQ(run("build " + fixture("cournot4.spec") + " --route t8").status, 0);
  EXPECT_GT(run("build " + fixture("cournot4.spec") + " --route t7").status, 2);
}

TEST_F(Cli, ZooRoundTrip) {
  const fs::path spec = dir_ / "abnormal.spec";
  ASSERT_EQ(run("zoo abnormal N=3 dead=2 --out " + spec.string()).status, 0);
  EXPECT_NE(slurp(spec).find("dead=2"), std::string::npos);
  EXPECT_EQ(run("validate " + spec.string()).status, 0);
  const CliRun r = run("check " + spec.string() + " --classify --checkers cycles");
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("body").at("classification").at("abnormal").at("flagged_players"),
            nlohmann::json::array({2}));
  EXPECT_GT(run("zoo nope").status, 2);
  EXPECT_GT(run("zoo cournot N").status, 2);
}

TEST_F(Cli, ValidateReportsErrors) {
  const fs::path bad = dir_ / "bad.spec";
  std::ofstream(bad) << "players: 2\nbox: 0 1\npayoff 1: x_1_1\n";
  EXPECT_EQ(run("validate " + bad.string()).status, 2 + 7);
  const fs::path syntax = dir_ / "syntax.spec";
  std::ofstream(syntax) << "players: 2\nbox: 0 1\npayoff 1: (\n";
  EXPECT_EQ(run("validate " + syntax.string()).status, 2 + 6);
  const CliRun ok = run("validate " + fixture("vector_actions.spec"));
  EXPECT_EQ(ok.status, 0);
  EXPECT_EQ(nlohmann::json::parse(ok.out).at("dims"), 2u);
}

TEST_F(Cli, ToleranceFromEnvironment) {
  EXPECT_EQ(run("check " + fixture("hetero_cournot.spec") + " --checkers cycles")
                .status,
            1);
  const std::string cmd = "POTGAME_TOL=100 '" + std::string(POTGAME_CLI_PATH) +
                          "' check " + fixture("hetero_cournot.spec") +
                          " --checkers cycles >/dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  EXPECT_EQ(WEXITSTATUS(raw), 0);
  const CliRun flag = run("check " + fixture("hetero_cournot.spec") +
                       " --checkers cycles --tol 20");
  EXPECT_EQ(flag.status, 0);
}

}  // namespace
