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

#ifndef CLUSTERTEST_EXPERIMENT_H_
#define CLUSTERTEST_EXPERIMENT_H_

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "clustertest/generators.h"
#include "clustertest/tester.h"

namespace clustertest {

// Flat "key = value" configuration. '#' starts a comment line. Keys are
// unique; Format() writes them sorted, so Parse(Format(c)) == c.
class ExperimentConfig {
 public:
  static absl::StatusOr<ExperimentConfig> Parse(absl::string_view text);
  static absl::StatusOr<ExperimentConfig> Load(const std::string& path);
  std::string Format() const;

  void Set(std::string key, std::string value) { values_[std::move(key)] = std::move(value); }
  bool Has(absl::string_view key) const { return values_.contains(std::string(key)); }

  std::string GetString(absl::string_view key, absl::string_view fallback) const;
  absl::StatusOr<double> GetDouble(absl::string_view key, double fallback) const;
  absl::StatusOr<int64_t> GetInt(absl::string_view key, int64_t fallback) const;
  absl::StatusOr<bool> GetBool(absl::string_view key, bool fallback) const;
  absl::StatusOr<std::vector<double>> GetDoubleList(absl::string_view key) const;

  const std::map<std::string, std::string>& values() const { return values_; }
  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;

 private:
  std::map<std::string, std::string> values_;
};

// One trial. Columns are shared by every task; unused cells stay empty.
struct ResultRow {
  std::string task;
  int64_t trial = 0;
  uint64_t seed = 0;
  // accept/reject for tests, yes/no for noisy-parities guesses.
  std::string verdict;
  // Ground truth in the same vocabulary, or empty.
  std::string truth;
  double statistic = 0.0;
  double threshold = 0.0;
  uint64_t vertex_queries = 0;
  uint64_t degree_queries = 0;
  uint64_t neighbor_queries = 0;
  uint64_t total_queries = 0;
  int64_t cycles_found = 0;
  // Running estimate 2 * (fraction correct so far) - 1.
  double advantage = 0.0;
  double wall_time_ms = 0.0;
  // "key=value;..." echo of the parameters that vary across rows.
  std::string params;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

// 12 significant digits; "inf" for the reject sentinel.
std::string FormatNumber(double x);

// RFC-4180 CSV with header. Wall time is included only when requested so
// that default output is byte-identical across runs.
std::string EmitCsv(const std::vector<ResultRow>& rows, bool include_timing = false);
std::string EmitJson(const std::vector<ResultRow>& rows, bool include_timing = false);
absl::StatusOr<std::vector<ResultRow>> ParseJsonRows(absl::string_view json);

// Runs fn(i) for i in [0, count) on up to `workers` threads. Results must be
// written to slot i by fn, which keeps output order independent of timing.
void ParallelFor(size_t count, size_t workers,
                 const std::function<void(size_t)>& fn);

// Tasks "test", "sweep" and "noisy-parities". Writes output.csv and
// output.json when those keys are set.
absl::StatusOr<std::vector<ResultRow>> RunExperiment(const ExperimentConfig& config);

// Builds the instance described by the instance.* keys. The truth string is
// "accept" for clusterable kinds and "reject" for unclusterable ones.
struct BuiltInstance {
  Graph graph;
  std::string truth;
  double certified_phi_in = 0.0;
  double measured_phi_out = 0.0;
};
absl::StatusOr<BuiltInstance> BuildInstance(const ExperimentConfig& config);

// Tester settings from the tester.* keys.
struct TesterSetup {
  int k = 1;
  double phi_in = 0.0;
  double phi_out = 0.0;
  double beta = 1.0;
  Mode mode = Mode::kOracle;
  Profile profile = Profile::kCalibrated;
  Overrides overrides;
  TesterOptions options;
  int repetitions = 1;
};
absl::StatusOr<TesterSetup> ReadTesterSetup(const ExperimentConfig& config,
                                            double default_phi_in);

absl::Status WriteFile(const std::string& path, absl::string_view contents);

}  // namespace clustertest

#endif  // CLUSTERTEST_EXPERIMENT_H_
