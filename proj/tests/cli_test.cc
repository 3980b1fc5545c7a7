// Copyright 2026 The tagdesc Authors.
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


#include "tagdesc/cli.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "tagdesc/csv.h"
#include "tagdesc/report.h"
#include "test_util.h"

namespace tagdesc {
namespace {

namespace fs = std::filesystem;
using testing::FixturePath;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "tagdesc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string ReadAll(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("tagdesc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, ExplainThreeItems) {
  const CliRun r = Invoke({"explain", "--clusters", FixturePath("examples/three_items.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const ExplainReport report = ParseReportJson(r.out);
  ASSERT_EQ(report.clusters.size(), 1u);
  EXPECT_EQ(report.clusters[0].descriptors.size(), 3u);
}

TEST_F(CliTest, ReportRerendersToFile) {
  const std::string json = Path("report.json");
  ASSERT_EQ(Invoke({"--out", json, "explain", "--clusters",
                    FixturePath("examples/three_items.json")}).code,
            kExitOk);
  const CliRun r = Invoke({"--format", "csv", "report", "--in", json});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind("cluster_id,section,method,clause,tag,value\n", 0), 0u);
}

TEST_F(CliTest, MissingInputIsIoErrorAndWritesNothing) {
  const std::string out = Path("never.json");
  const CliRun r = Invoke({"--out", out, "explain", "--clusters", Path("absent.json")});
  EXPECT_EQ(r.code, kExitIo);
  EXPECT_FALSE(fs::exists(out));
  EXPECT_NE(r.err.find("tagdesc: "), std::string::npos);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(Invoke({}).code, kExitUsage);
  EXPECT_EQ(Invoke({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"explain"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"explain", "--clusters", FixturePath("examples/three_items.json"),
                    "--methods", "magic"}).code,
            kExitUsage);
}

TEST_F(CliTest, SeedRequiredForRandomCommands) {
  EXPECT_EQ(Invoke({"bench", "--sizes", "20", "--tags", "5"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"cluster", "--data", FixturePath("divorce/ratings.csv"), "--k", "2",
                    "--exclude", "couple"}).code,
            kExitUsage);
}

TEST_F(CliTest, StrictCnfInfeasible) {
  const CliRun r = Invoke({"explain", "--clusters", FixturePath("examples/singleton.json"),
                        "--methods", "cnf"});
  EXPECT_EQ(r.code, kExitInfeasible);
  const CliRun dropped = Invoke({"explain", "--clusters", FixturePath("examples/singleton.json"),
                              "--methods", "cnf", "--cnf-preprocess", "drop-and-report"});
  EXPECT_EQ(dropped.code, kExitOk) << dropped.err;
}

TEST_F(CliTest, MalformedInputIsDataError) {
  {
    std::ofstream f(Path("bad.json"));
    f << "{\"universe\": [\"a\"], \"clusters\": [";
  }
  EXPECT_EQ(Invoke({"explain", "--clusters", Path("bad.json")}).code, kExitInvalidData);
}

TEST_F(CliTest, BudgetExhaustionExitCode) {
  const CliRun r = Invoke({"bench", "--seed", "1", "--sizes", "300", "--tags", "40",
                        "--repeats", "1", "--node-budget", "1"});
  // Bench records exhaustion in the table rather than failing.
  EXPECT_EQ(r.code, kExitOk) << r.err;
  const CliRun e = Invoke({"explain", "--clusters", FixturePath("examples/greedy_trace.json"),
                        "--methods", "exact", "--node-budget", "1"});
  EXPECT_TRUE(e.code == kExitOk || e.code == kExitBudget);
}

TEST_F(CliTest, BenchCsv) {
  const CliRun r = Invoke({"bench", "--seed", "3", "--sizes", "40,80", "--tags", "10",
                        "--repeats", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const DataTable t = ParseCsv(r.out);
  EXPECT_EQ(t.row_count(), 6u);
  EXPECT_EQ(t.header()[4], "optimal_fraction");
}

TEST_F(CliTest, TagThenExplainDivorce) {
  const std::string clusters = Path("clusters.json");
  const std::string cmap = Path("complement.json");
  const CliRun tag = Invoke({"--out", clusters, "tag", "--data", FixturePath("divorce/ratings.csv"),
                          "--schema", FixturePath("divorce/schema.json"), "--labels",
                          FixturePath("divorce/labels.csv"), "--id-column", "couple",
                          "--complement-map-out", cmap});
  ASSERT_EQ(tag.code, kExitOk) << tag.err;
  ASSERT_TRUE(fs::exists(cmap));
  const CliRun ex = Invoke({"--format", "text", "explain", "--clusters", clusters,
                         "--complement-map", cmap, "--methods", "greedy,exact"});
  ASSERT_EQ(ex.code, kExitOk) << ex.err;
  EXPECT_NE(ex.out.find("cluster 1"), std::string::npos);
}

TEST_F(CliTest, ClusterElbowCsv) {
  const std::string elbow = Path("elbow.csv");
  const CliRun r = Invoke({"--seed", "7", "cluster", "--data", FixturePath("divorce/ratings.csv"),
                        "--exclude", "couple", "--elbow", "1..4", "--elbow-out", elbow, "--k",
                        "3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const DataTable t = ParseCsv(ReadAll(elbow));
  EXPECT_EQ(t.header(), (std::vector<std::string>{"k", "sse"}));
  EXPECT_EQ(t.row_count(), 4u);
}

}  // namespace
}  // namespace tagdesc
