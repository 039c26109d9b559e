// Copyright 2026 The punctkit Authors.
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
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace punctkit {
namespace {

namespace fs = std::filesystem;

const fs::path kFixtures = PUNCTKIT_FIXTURE_DIR;

#ifdef PUNCTKIT_CLI_PATH

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// Runs the CLI through the shell, capturing stdout; stderr is discarded.
RunResult RunCli(const std::string& args) {
  const std::string command =
      std::string("'") + PUNCTKIT_CLI_PATH + "' " + args + " 2>/dev/null";
  RunResult result;
  FILE* pipe = ::popen(command.c_str(), "r");
  if (pipe == nullptr) return result;
  char buffer[4096];
  std::size_t n;
  while ((n = std::fread(buffer, 1, sizeof(buffer), pipe)) > 0) result.out.append(buffer, n);
  const int status = ::pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string Quote(const fs::path& p) { return "'" + p.string() + "'"; }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() /
           ("punctkit_cli_" + std::string(info->name()) + "_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path WriteConfig(const std::string& json) {
    const fs::path path = dir_ / "config.json";
    std::ofstream(path) << json;
    return path;
  }

  fs::path dir_;
};

TEST_F(CliTest, AnalyzeCleanRunExitsZero) {
  const std::string en = (kFixtures / "en_synthetic.txt").string();
  const fs::path config = WriteConfig(R"({"documents": [")" + en +
                                      R"("], "units": ["words"], "scopes": ["terminal"]})");
  const RunResult r = RunCli("analyze --config " + Quote(config) + " --out " +
                             Quote(dir_ / "out") + " --plots csv");
  EXPECT_EQ(r.exit_code, 0);
  ASSERT_TRUE(fs::exists(dir_ / "out" / "report.json"));
  EXPECT_TRUE(fs::exists(dir_ / "out" / "en_synthetic" / "weibull_plot.csv"));
  const auto report = nlohmann::json::parse(std::ifstream(dir_ / "out" / "report.json"));
  EXPECT_EQ(report["error_count"], 0);
}

TEST_F(CliTest, AnalyzeWithStageErrorsExitsTwo) {
  const RunResult r = RunCli("analyze --config " + Quote(kFixtures / "corpus.json") +
                             " --out " + Quote(dir_ / "out") + " --plots none");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_TRUE(fs::exists(dir_ / "out" / "report.json"));
}

TEST_F(CliTest, ValidationFailuresExitOne) {
  EXPECT_EQ(RunCli("analyze --config " + Quote(dir_ / "absent.json")).exit_code, 1);
  EXPECT_EQ(RunCli("analyze --config " + Quote(WriteConfig(R"({"documents": ["x"], "bogus": 1})")))
                .exit_code,
            1);
  const std::string zh = (kFixtures / "zh_spring.txt").string();
  const fs::path no_lexicon = WriteConfig(R"({"documents": [")" + zh + R"("]})");
  EXPECT_EQ(RunCli("analyze --config " + Quote(no_lexicon) + " --out " + Quote(dir_ / "o"))
                .exit_code,
            1);
  EXPECT_FALSE(fs::exists(dir_ / "o" / "report.json"));
  EXPECT_EQ(RunCli("frobnicate").exit_code, 1);
  EXPECT_EQ(RunCli("mfdfa " + Quote(kFixtures / "en_synthetic.txt") + " --detrend-order 7")
                .exit_code,
            1);
  EXPECT_EQ(RunCli("tokenize " + Quote(kFixtures / "zh_spring.txt")).exit_code, 1);
}

TEST_F(CliTest, TokenizeEmitsJsonLines) {
  const RunResult r = RunCli("tokenize " + Quote(kFixtures / "zh_spring.txt") + " --lexicon " +
                             Quote(kFixtures / "zh_lexicon.txt"));
  ASSERT_EQ(r.exit_code, 0);
  std::istringstream in(r.out);
  std::string line;
  int lines = 0;
  bool saw_terminal = false;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    ASSERT_TRUE(j.contains("surface"));
    ASSERT_TRUE(j.contains("kind"));
    saw_terminal = saw_terminal || j["surface"] == "。";
    ++lines;
  }
  EXPECT_GT(lines, 100);
  EXPECT_TRUE(saw_terminal);
}

TEST_F(CliTest, AnalysisSubcommands) {
  const std::string en = Quote(kFixtures / "en_synthetic.txt");
  const RunResult wb = RunCli("weibull " + en + " --scope terminal");
  ASSERT_EQ(wb.exit_code, 0);
  const auto fit = nlohmann::json::parse(wb.out);
  EXPECT_GT(fit["p"].get<double>(), 0.0);
  EXPECT_LT(fit["p"].get<double>(), 1.0);

  const RunResult zipf = RunCli("zipf " + en);
  ASSERT_EQ(zipf.exit_code, 0);
  EXPECT_GT(nlohmann::json::parse(zipf.out)["fit"]["gamma"].get<double>(), 0.5);

  const RunResult mf = RunCli("mfdfa " + en + " --out-dir " + Quote(dir_ / "mf"));
  EXPECT_EQ(mf.exit_code, 0);
  EXPECT_TRUE(fs::exists(dir_ / "mf" / "spectrum.csv"));

  const std::string zh = Quote(kFixtures / "zh_spring.txt");
  const std::string lex = Quote(kFixtures / "zh_lexicon.txt");
  EXPECT_EQ(RunCli("mfdfa " + zh + " --lexicon " + lex).exit_code, 2) << "series too short";
}

TEST_F(CliTest, PlotFromReport) {
  ASSERT_EQ(RunCli("analyze --config " + Quote(kFixtures / "corpus.json") + " --out " +
                   Quote(dir_ / "out") + " --plots none")
                .exit_code,
            2);
  const RunResult r = RunCli("plot --report " + Quote(dir_ / "out" / "report.json") +
                             " --format svg --out " + Quote(dir_ / "plots"));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(fs::exists(dir_ / "plots" / "zh_spring" / "weibull_pmf.svg"));
}

#else

TEST(CliTest, DISABLED_CliNotBuilt) {}

#endif

}  // namespace
}  // namespace punctkit
