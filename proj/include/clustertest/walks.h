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

#ifndef CLUSTERTEST_WALKS_H_
#define CLUSTERTEST_WALKS_H_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "absl/status/statusor.h"
#include "clustertest/query_oracle.h"
#include "clustertest/random.h"

namespace clustertest {

// t lazy steps from `start`. A moving step costs one degree query and one
// neighbor query; a staying step is free.
Vertex LazyWalk(QueryAccess& g, Vertex start, int64_t t, Rng& rng);

struct EndpointDistribution {
  Vertex source = 0;
  uint64_t walks = 0;
  // (vertex, hits) sorted by vertex; hits sum to `walks`.
  std::vector<std::pair<Vertex, uint32_t>> counts;

  double Probability(Vertex v) const;
};

// R independent walks; walk w uses stream (seed, tag, source_index, batch, w).
EndpointDistribution EmpiricalEndpointDistribution(
    QueryAccess& g, Vertex source, int64_t t, uint64_t R, uint64_t seed,
    uint64_t tag, uint64_t source_index, uint64_t batch);

struct NormTestResult {
  bool accept = true;
  // (1/R^2) sum_i hits1(i) hits2(i) / deg(i); unbiased for ||D^{-1/2} p||^2.
  double statistic = 0.0;
};

// Two batches of R walks. Rejects iff the statistic exceeds sigma / 2.
// Requires R >= 16 sqrt(vol) / delta.
absl::StatusOr<NormTestResult> L2NormTest(QueryAccess& g, Vertex source,
                                          double sigma, uint64_t R, int64_t t,
                                          double delta, uint64_t seed,
                                          uint64_t source_index = 0);

enum class GramDiagonal {
  // q_a^T D^{-1} q_a with the source's own batch.
  kPlugIn,
  // Ordered pairs of distinct walks only; unbiased.
  kCollision,
};

// Entry (a, b) estimates <D^{-1/2} p_a, D^{-1/2} p_b> from one batch of R
// walks per position of `sources`. Off-diagonal entries use independent
// batches.
Eigen::MatrixXd EstimateGram(QueryAccess& g, std::span<const Vertex> sources,
                             int64_t t, uint64_t R, uint64_t seed,
                             GramDiagonal diagonal = GramDiagonal::kCollision);

}  // namespace clustertest

#endif  // CLUSTERTEST_WALKS_H_
