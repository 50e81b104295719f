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

#ifndef CLUSTERTEST_TESTER_H_
#define CLUSTERTEST_TESTER_H_

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "clustertest/graph.h"
#include "clustertest/query_oracle.h"
#include "clustertest/spectral.h"
#include "clustertest/walks.h"

namespace clustertest {

enum class Profile { kPaper, kCalibrated };
enum class Mode { kOracle, kQuery };

const char* ProfileName(Profile p);
const char* ModeName(Mode m);
absl::StatusOr<Profile> ParseProfile(absl::string_view s);
absl::StatusOr<Mode> ParseMode(absl::string_view s);

inline constexpr double kRejectSentinel = std::numeric_limits<double>::infinity();

// Scale factors and overrides. The paper profile honours only the integer
// overrides; the calibrated profile also applies the scales.
struct Overrides {
  // Calibrated: s = s_scale * (closed-form s).
  double s_scale = 1e-3;
  // Calibrated: c = t_scale * 20 / phi_in^2.
  double t_scale = 0.2;
  // Calibrated: R = R_scale / (mu_err * min_degree), which caps the
  // self-collision bias 1/(R * min_degree) of a plug-in Gram diagonal at
  // mu_err / R_scale.
  double R_scale = 4.0;
  // Calibrated: failure budget of the norm tester; r = 16 sqrt(vol) / delta.
  double delta = 0.25;

  std::optional<uint64_t> sample_count;
  std::optional<int64_t> walk_length;
  std::optional<uint64_t> walks_per_source;
  std::optional<uint64_t> norm_walks;
};

struct TesterParams {
  Profile profile = Profile::kPaper;
  int k = 1;
  double phi_in = 0.0;
  double phi_out = 0.0;
  double beta = 1.0;
  double eta = 0.5;
  uint64_t vol = 0;

  // Closed-form values.
  double s = 0.0;
  double c = 0.0;
  double t = 0.0;
  double sigma = 0.0;
  double mu_thres = 0.0;
  double mu_err = 0.0;
  double R = 0.0;
  double r = 0.0;
  double delta = 0.0;

  // s (1 - phi_in^2/4)^{2t} and
  // 8(k+1) ln(12(k+1)) / (beta (1-eta) vol) * (1 - 30 phi_out)^{2t}, both at
  // the realized integer s and t.
  double yes_bound = 0.0;
  double no_bound = 0.0;

  // phi_in^2 > 480 phi_out.
  bool gap_condition = false;

  // Integers actually used.
  uint64_t sample_count = 0;
  int64_t walk_length = 0;
  uint64_t walks_per_source = 0;
  uint64_t norm_walks = 0;
};

absl::StatusOr<TesterParams> ComputeParams(uint64_t vol, uint32_t min_degree,
                                           int k, double phi_in,
                                           double phi_out, double beta,
                                           Profile profile,
                                           const Overrides& overrides = {},
                                           double eta = 0.5);

absl::StatusOr<TesterParams> ComputeParams(const Graph& g, int k,
                                           double phi_in, double phi_out,
                                           double beta, Profile profile,
                                           const Overrides& overrides = {},
                                           double eta = 0.5);

// s independent draws from the degree sampler.
std::vector<Vertex> SampleSources(const DegreeSampler& sampler, uint64_t s,
                                  uint64_t seed, QueryLedger& ledger);

// mu_{k+1} of the exact Gram of the multiset S. Repeated sources are folded
// into a weighted Gram diag(sqrt(m)) G diag(sqrt(m)) over distinct vertices,
// which has the same nonzero spectrum. Returns 0 when |S| <= k.
absl::StatusOr<double> OracleStatistic(const WalkKernel& kernel,
                                       std::span<const Vertex> sources, int k,
                                       EigenBackend backend = EigenBackend::kAuto);

struct QueryStatisticArgs {
  int k = 1;
  int64_t t = 0;
  double sigma = 0.0;
  uint64_t R = 0;
  uint64_t r = 0;
  double delta = 0.0;
  GramDiagonal diagonal = GramDiagonal::kPlugIn;
  EigenBackend backend = EigenBackend::kAuto;
};

// Norm-tests every source and returns kRejectSentinel on any rejection;
// otherwise mu_{k+1}(Q^T Q) from R walks per source.
absl::StatusOr<double> QueryStatistic(QueryAccess& g,
                                      std::span<const Vertex> sources,
                                      const QueryStatisticArgs& args,
                                      uint64_t seed);

struct TestVerdict {
  bool accept = false;
  double statistic = 0.0;
  double threshold = 0.0;
  QueryLedger queries;
  uint64_t seed = 0;
  Mode mode = Mode::kOracle;
  uint64_t sample_count = 0;
};

struct TesterOptions {
  // Query mode refuses when s * (R + 2r) * t exceeds this.
  double walk_budget = 2e9;
  GramDiagonal diagonal = GramDiagonal::kPlugIn;
  EigenBackend backend = EigenBackend::kAuto;
  SamplerOptions sampler;
};

// Runs partition tests on one graph. Oracle mode builds the exact walk
// kernel once and reuses it across runs. Run() is thread-safe.
class PartitionTester {
 public:
  static absl::StatusOr<std::unique_ptr<PartitionTester>> Create(
      const Graph& g, const TesterParams& params, Mode mode,
      const TesterOptions& options = {});

  absl::StatusOr<TestVerdict> Run(uint64_t seed) const;

  // Majority of `repetitions` (odd) independent runs with derived seeds.
  absl::StatusOr<TestVerdict> RunMajority(uint64_t seed, int repetitions) const;

  const TesterParams& params() const { return params_; }
  const WalkKernel* kernel() const { return kernel_.get(); }
  const DegreeSampler& sampler() const { return *sampler_; }

 private:
  PartitionTester(const Graph& g, const TesterParams& params, Mode mode,
                  const TesterOptions& options)
      : g_(g), params_(params), mode_(mode), options_(options) {}

  const Graph& g_;
  TesterParams params_;
  Mode mode_;
  TesterOptions options_;
  std::unique_ptr<WalkKernel> kernel_;
  std::unique_ptr<DegreeSampler> sampler_;
};

// One-shot convenience wrapper around PartitionTester.
absl::StatusOr<TestVerdict> PartitionTest(const Graph& g, int k, double phi_in,
                                          double phi_out, double beta,
                                          Mode mode, Profile profile,
                                          uint64_t seed,
                                          const Overrides& overrides = {},
                                          const TesterOptions& options = {});

enum class ClusterabilityVariant { kKK, kK2K };

struct ClusterabilityArgs {
  int k = 1;
  double phi = 0.0;
  double phi_prime = 0.0;
  double eps = 0.0;
  uint32_t d = 0;
  ClusterabilityVariant variant = ClusterabilityVariant::kKK;
  // phi_out = mapping_c * k^2 * phi' / eps^2 for the (k, k) variant.
  double mapping_c = 1.0;
  // Expansion constant in the (k, 2k) mapping and its phi' bound.
  double c_exp = 1.0;
};

struct ClusterabilityMapping {
  double beta = 0.0;
  double phi_in = 0.0;
  double phi_out = 0.0;
};

absl::StatusOr<ClusterabilityMapping> MapClusterabilityParams(
    const ClusterabilityArgs& args, Profile profile);

// Pads g with loops to degree d and runs the partition test with mapped
// parameters.
absl::StatusOr<TestVerdict> ClusterabilityTest(const Graph& g,
                                               const ClusterabilityArgs& args,
                                               Mode mode, Profile profile,
                                               uint64_t seed,
                                               const Overrides& overrides = {},
                                               const TesterOptions& options = {});

}  // namespace clustertest

#endif  // CLUSTERTEST_TESTER_H_
