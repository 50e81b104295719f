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

#ifndef CLUSTERTEST_REDUCTIONS_H_
#define CLUSTERTEST_REDUCTIONS_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "clustertest/generators.h"
#include "clustertest/graph.h"
#include "clustertest/query_oracle.h"

namespace clustertest {

// Copy b of source vertex v.
inline Vertex LiftVertex(Vertex v, uint8_t b) { return 2 * v + b; }
inline Vertex BaseVertex(Vertex lifted) { return lifted / 2; }
inline uint8_t LiftBit(Vertex lifted) { return lifted & 1; }

struct EdgeProvenance {
  uint32_t source_edge;
  uint8_t label;
};

struct ReducedGraph {
  Graph graph;
  // Aligned with graph.edges().
  std::vector<EdgeProvenance> provenance;
};

// Two-copy lift: label 0 gives {(u0,v0), (u1,v1)}, label 1 gives
// {(u0,v1), (u1,v0)}. The lifted edge set is a set, so a label-1 loop (v,v)
// yields the single edge (v0,v1); every other source edge yields two.
// deg(v^b) = deg(v).
ReducedGraph ReduceToPartitionTesting(const NoisyParitiesInstance& inst);

// Query access to the lift without materializing it. Each query on a lifted
// vertex costs one query on the source instance, recorded in this ledger.
class LazyReducedOracle : public QueryAccess {
 public:
  explicit LazyReducedOracle(const NoisyParitiesInstance& inst) : inst_(inst) {}

  size_t num_vertices() const override { return 2 * inst_.graph.num_vertices(); }
  uint64_t volume() const override { return 2 * inst_.graph.volume(); }

  Vertex RandomVertex(Rng& rng) override;
  uint32_t Degree(Vertex v) override;
  std::optional<Vertex> Neighbor(Vertex v, uint32_t i) override;

 private:
  const NoisyParitiesInstance& inst_;
};

// Label-1 edges on the source vertex set.
Graph ReduceToMaxCut(const NoisyParitiesInstance& inst);

inline constexpr size_t kMaxCutBruteForceLimit = 24;

// Exact maximum cut over all 2^{n-1} bipartitions; n <= 24.
absl::StatusOr<uint64_t> MaxCutBruteForce(const Graph& g);

}  // namespace clustertest

#endif  // CLUSTERTEST_REDUCTIONS_H_
