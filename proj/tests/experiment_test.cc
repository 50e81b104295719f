// Copyright 2026 The Clustertest Authors.
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


#include "clustertest/experiment.h"

#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "absl/strings/match.h"
#include "absl/strings/str_split.h"
#include "gtest/gtest.h"

namespace clustertest {
namespace {

ExperimentConfig Config(absl::string_view text) {
  absl::StatusOr<ExperimentConfig> c = ExperimentConfig::Parse(text);
  EXPECT_TRUE(c.ok()) << c.status();
  return *c;
}

constexpr char kSmallTest[] = R"(
task = test
instance.kind = clusterable
instance.k = 1
instance.cluster_size = 120
instance.d = 12
instance.seed = 3
tester.k = 1
tester.phi_out = 0.0001
seed = 17
)";

TEST(ExperimentTest, ConfigRoundTrips) {
  ExperimentConfig c = Config("# comment\n b = 2 \na=1\n\nlist = 0.1, 0.2\n");
  EXPECT_EQ(c.GetString("a", ""), "1");
  EXPECT_EQ(*c.GetInt("b", 0), 2);
  EXPECT_EQ(*c.GetDoubleList("list"), (std::vector<double>{0.1, 0.2}));
  EXPECT_EQ(c.Format(), "a = 1\nb = 2\nlist = 0.1, 0.2\n");
  EXPECT_EQ(Config(c.Format()), c);
}

TEST(ExperimentTest, ConfigRejectsMalformedInput) {
  EXPECT_FALSE(ExperimentConfig::Parse("a = 1\na = 2\n").ok());
  EXPECT_FALSE(ExperimentConfig::Parse("novalue\n").ok());
  EXPECT_FALSE(ExperimentConfig::Parse(" = 3\n").ok());
  ExperimentConfig c = Config("x = abc\n");
  EXPECT_FALSE(c.GetDouble("x", 0).ok());
  EXPECT_FALSE(c.GetInt("x", 0).ok());
  EXPECT_FALSE(c.GetBool("x", false).ok());
  EXPECT_EQ(*c.GetInt("missing", 7), 7);
}

TEST(ExperimentTest, UnknownTaskIsAnError) {
  ExperimentConfig c = Config("task = generate\n");
  EXPECT_EQ(RunExperiment(c).status().code(), absl::StatusCode::kInvalidArgument);
}

TEST(ExperimentTest, FormatNumberUsesTwelveDigits) {
  EXPECT_EQ(FormatNumber(0.1), "0.1");
  EXPECT_EQ(FormatNumber(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(FormatNumber(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(FormatNumber(12), "12");
}

TEST(ExperimentTest, ZeroTrialsGiveHeaderOnlyCsv) {
  ExperimentConfig c = Config(kSmallTest);
  c.Set("trials", "0");
  auto rows = RunExperiment(c);
  ASSERT_TRUE(rows.ok()) << rows.status();
  EXPECT_TRUE(rows->empty());
  const std::string csv = EmitCsv(*rows);
  const std::vector<std::string> lines = absl::StrSplit(csv, "\r\n");
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0],
            "task,trial,seed,verdict,truth,statistic,threshold,vertex_queries,"
            "degree_queries,neighbor_queries,total_queries,cycles_found,"
            "advantage,params");
  EXPECT_EQ(lines[1], "");
}

TEST(ExperimentTest, OneTrialGivesTwoLineCsv) {
  ExperimentConfig c = Config(kSmallTest);
  c.Set("trials", "1");
  auto rows = RunExperiment(c);
  ASSERT_TRUE(rows.ok()) << rows.status();
  ASSERT_EQ(rows->size(), 1u);
  EXPECT_EQ((*rows)[0].truth, "accept");
  const std::vector<std::string> lines = absl::StrSplit(EmitCsv(*rows), "\r\n");
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[2], "");
  EXPECT_TRUE(absl::StartsWith(lines[1], "test,0,"));
  // Params contain ';' and '=' but no comma, so they are not quoted.
  EXPECT_EQ(lines[1].find('"'), std::string::npos);
}

TEST(ExperimentTest, CsvQuotesSpecialCharacters) {
  ResultRow row;
  row.task = "test";
  row.params = "a,b \"c\"";
  const std::string csv = EmitCsv({row});
  EXPECT_NE(csv.find("\"a,b \"\"c\"\"\""), std::string::npos);
}

TEST(ExperimentTest, TimingColumnOnlyWhenRequested) {
  ResultRow row;
  row.wall_time_ms = 12.5;
  EXPECT_EQ(EmitCsv({row}).find("wall_time_ms"), std::string::npos);
  EXPECT_NE(EmitCsv({row}, true).find("wall_time_ms"), std::string::npos);
  EXPECT_EQ(EmitJson({row}).find("wall_time_ms"), std::string::npos);
}

TEST(ExperimentTest, JsonRoundTrips) {
  ExperimentConfig c = Config(kSmallTest);
  c.Set("trials", "4");
  auto rows = RunExperiment(c);
  ASSERT_TRUE(rows.ok()) << rows.status();
  ResultRow refused;
  refused.task = "test";
  refused.verdict = "refused";
  refused.statistic = std::numeric_limits<double>::infinity();
  rows->push_back(refused);
  // Wall time is left out of default output.
  for (ResultRow& r : *rows) r.wall_time_ms = 0.0;
  auto parsed = ParseJsonRows(EmitJson(*rows));
  ASSERT_TRUE(parsed.ok()) << parsed.status();
  EXPECT_EQ(*parsed, *rows);
  EXPECT_FALSE(ParseJsonRows("{not json").ok());
}

TEST(ExperimentTest, OutputIsByteIdenticalAcrossRunsAndWorkers) {
  ExperimentConfig c = Config(kSmallTest);
  c.Set("trials", "6");
  auto a = RunExperiment(c);
  c.Set("workers", "3");
  auto b = RunExperiment(c);
  ASSERT_TRUE(a.ok() && b.ok());
  EXPECT_EQ(EmitCsv(*a), EmitCsv(*b));
  EXPECT_EQ(EmitJson(*a), EmitJson(*b));
}

TEST(ExperimentTest, WritesConfiguredOutputFiles) {
  const std::string dir = ::testing::TempDir();
  ExperimentConfig c = Config(kSmallTest);
  c.Set("trials", "2");
  c.Set("output.csv", dir + "/exp_out.csv");
  c.Set("output.json", dir + "/exp_out.json");
  auto rows = RunExperiment(c);
  ASSERT_TRUE(rows.ok()) << rows.status();
  std::ifstream csv(dir + "/exp_out.csv", std::ios::binary);
  std::stringstream ss;
  ss << csv.rdbuf();
  EXPECT_EQ(ss.str(), EmitCsv(*rows));
  std::ifstream json(dir + "/exp_out.json");
  std::stringstream js;
  js << json.rdbuf();
  for (ResultRow& r : *rows) r.wall_time_ms = 0.0;
  EXPECT_EQ(*ParseJsonRows(js.str()), *rows);
}

TEST(ExperimentTest, QueryCountsAddUpAndAdvantageIsRunning) {
  ExperimentConfig c = Config(kSmallTest);
  c.Set("trials", "5");
  c.Set("tester.mode", "query");
  c.Set("tester.sample_count", "8");
  c.Set("tester.walk_length", "20");
  c.Set("tester.walks_per_source", "200");
  c.Set("tester.norm_walks", "2500");
  auto rows = RunExperiment(c);
  ASSERT_TRUE(rows.ok()) << rows.status();
  ASSERT_EQ(rows->size(), 5u);
  int correct = 0;
  for (size_t i = 0; i < rows->size(); ++i) {
    const ResultRow& r = (*rows)[i];
    EXPECT_GT(r.total_queries, 0u);
    EXPECT_EQ(r.total_queries, r.vertex_queries + r.degree_queries + r.neighbor_queries);
    correct += r.verdict == r.truth;
    EXPECT_DOUBLE_EQ(r.advantage, 2.0 * correct / (i + 1.0) - 1.0);
  }
}

TEST(ExperimentTest, PaperProfileQueryModeIsRefused) {
  ExperimentConfig c = Config(kSmallTest);
  c.Set("trials", "3");
  c.Set("tester.mode", "query");
  c.Set("tester.profile", "paper");
  auto rows = RunExperiment(c);
  ASSERT_TRUE(rows.ok()) << rows.status();
  ASSERT_EQ(rows->size(), 3u);
  for (const ResultRow& r : *rows) {
    EXPECT_EQ(r.verdict, "refused");
    EXPECT_EQ(r.total_queries, 0u);
  }
}

TEST(ExperimentTest, SweepRejectionIsMonotoneInPhiOut) {
  ExperimentConfig c = Config(R"(
task = sweep
instance.k = 1
instance.cluster_size = 120
instance.d = 12
instance.phi_out = 0.01
sweep.phi_out = 0.0001, 0.001, 0.005, 0.02
trials = 4
seed = 5
)");
  auto rows = RunExperiment(c);
  ASSERT_TRUE(rows.ok()) << rows.status();
  ASSERT_EQ(rows->size(), 4u * 2 * 4);
  // Rows come out per phi_out value, YES block then NO block.
  for (int which = 0; which < 2; ++which) {
    for (int trial = 0; trial < 4; ++trial) {
      bool rejected_before = false;
      double stat = 0.0;
      for (int p = 0; p < 4; ++p) {
        const ResultRow& r = (*rows)[p * 8 + which * 4 + trial];
        EXPECT_EQ(r.truth, which ? "reject" : "accept");
        if (p > 0) EXPECT_EQ(r.statistic, stat);
        stat = r.statistic;
        const bool rejected = r.verdict == "reject";
        EXPECT_TRUE(rejected || !rejected_before);
        rejected_before = rejected;
      }
    }
  }
}

TEST(ExperimentTest, NoisyParitiesRowsUseGuessVocabulary) {
  ExperimentConfig c = Config(R"(
task = noisy-parities
np.n = 2000
np.d = 3
np.eps = 0.05
np.max_queries = 100
trials = 5
seed = 2
)");
  auto rows = RunExperiment(c);
  ASSERT_TRUE(rows.ok()) << rows.status();
  ASSERT_EQ(rows->size(), 5u);
  for (const ResultRow& r : *rows) {
    EXPECT_TRUE(r.verdict == "yes" || r.verdict == "no");
    EXPECT_TRUE(r.truth == "yes" || r.truth == "no");
    EXPECT_LE(r.total_queries, 100u);
    EXPECT_EQ(r.vertex_queries, 0u);
  }
  c.Set("np.case", "maybe");
  EXPECT_FALSE(RunExperiment(c).ok());
}

TEST(ExperimentTest, ParallelForVisitsEverySlotOnce) {
  std::vector<int> hits(1000, 0);
  ParallelFor(hits.size(), 4, [&](size_t i) { hits[i] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
  ParallelFor(0, 4, [&](size_t) { ADD_FAILURE(); });
}

}  // namespace
}  // namespace clustertest
