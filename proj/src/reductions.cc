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

#include "clustertest/reductions.h"

#include <algorithm>
#include <bit>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace clustertest {

ReducedGraph ReduceToPartitionTesting(const NoisyParitiesInstance& inst) {
  const Graph& g = inst.graph;
  std::vector<Edge> edges;
  ReducedGraph out;
  edges.reserve(2 * g.num_edges());
  out.provenance.reserve(2 * g.num_edges());
  for (uint32_t e = 0; e < g.num_edges(); ++e) {
    const Edge& src = g.edges()[e];
    const uint8_t y = inst.y[e];
    if (src.is_loop() && y == 1) {
      edges.push_back({LiftVertex(src.u, 0), LiftVertex(src.u, 1)});
      out.provenance.push_back({e, y});
      continue;
    }
    edges.push_back({LiftVertex(src.u, 0), LiftVertex(src.v, y)});
    edges.push_back({LiftVertex(src.u, 1), LiftVertex(src.v, 1 - y)});
    out.provenance.push_back({e, y});
    out.provenance.push_back({e, y});
  }
  out.graph = *Graph::FromEdges(2 * g.num_vertices(), std::move(edges));
  return out;
}

Vertex LazyReducedOracle::RandomVertex(Rng& rng) {
  ++ledger_.vertex_queries;
  return static_cast<Vertex>(rng.UniformInt(num_vertices()));
}

uint32_t LazyReducedOracle::Degree(Vertex v) {
  ++ledger_.degree_queries;
  return inst_.graph.degree(BaseVertex(v));
}

std::optional<Vertex> LazyReducedOracle::Neighbor(Vertex v, uint32_t i) {
  ++ledger_.neighbor_queries;
  const Vertex base = BaseVertex(v);
  if (i == 0 || i > inst_.graph.degree(base)) return std::nullopt;
  const Vertex u = inst_.graph.neighbors(base)[i - 1];
  const uint8_t y = inst_.y[inst_.graph.incident_edges(base)[i - 1]];
  return LiftVertex(u, LiftBit(v) ^ y);
}

Graph ReduceToMaxCut(const NoisyParitiesInstance& inst) {
  std::vector<Edge> edges;
  for (size_t e = 0; e < inst.graph.num_edges(); ++e) {
    if (inst.y[e] == 1) edges.push_back(inst.graph.edges()[e]);
  }
  return *Graph::FromEdges(inst.graph.num_vertices(), std::move(edges));
}

absl::StatusOr<uint64_t> MaxCutBruteForce(const Graph& g) {
  const size_t n = g.num_vertices();
  if (n > kMaxCutBruteForceLimit) {
    return absl::InvalidArgumentError(absl::StrCat(
        "brute-force max cut limited to n <= ", kMaxCutBruteForceLimit));
  }
  if (n == 1) return 0;
  // Vertex n-1 stays on side 0; Gray code over the other n-1 vertices.
  std::vector<bool> side(n, false);
  int64_t cut = 0, best = 0;
  const uint64_t total = uint64_t{1} << (n - 1);
  for (uint64_t step = 1; step < total; ++step) {
    const Vertex v = std::countr_zero(step);
    int64_t same = 0, other = 0;
    for (Vertex u : g.neighbors(v)) {
      if (u == v) continue;
      (side[u] == side[v] ? same : other) += 1;
    }
    cut += same - other;
    side[v] = !side[v];
    best = std::max(best, cut);
  }
  return static_cast<uint64_t>(best);
}

}  // namespace clustertest
