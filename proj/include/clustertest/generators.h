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

#ifndef CLUSTERTEST_GENERATORS_H_
#define CLUSTERTEST_GENERATORS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "clustertest/cuts.h"
#include "clustertest/graph.h"

namespace clustertest {

// Converts half-edge pairings to graph edges. A pairing of two half-edges
// at the same vertex becomes two unit loops so that every vertex keeps one
// adjacency entry per half-edge.
std::vector<Edge> EdgesFromPairings(const std::vector<Edge>& pairings);

// Uniform perfect matching of the n*d half-edges (v, i) -> v*d + i.
absl::StatusOr<std::vector<Edge>> ConfigurationPairings(size_t n, uint32_t d,
                                                        uint64_t seed);

// d-regular multigraph from ConfigurationPairings. May contain loops and
// parallel edges.
absl::StatusOr<Graph> GenerateConfigurationModel(size_t n, uint32_t d,
                                                 uint64_t seed);

struct PlantedInstance {
  Graph graph;
  int num_clusters = 0;
  std::vector<int> cluster_of;
  std::vector<std::vector<Vertex>> clusters;
  std::vector<ClusterCertificate> certificates;
  // min_i internal lower bound.
  double certified_phi_in = 0.0;
  // max_i external conductance.
  double measured_phi_out = 0.0;
  // min_i vol(C_i) * num_clusters / vol(V).
  double beta = 0.0;
  uint64_t cross_swaps_per_pair = 0;
};

struct BridgeOptions {
  // Target external conductance per cluster. Zero means no cross edges.
  double phi_out = 0.0;
  // Exact number of rewiring swaps per adjacent cluster pair; overrides
  // phi_out when set.
  std::optional<uint64_t> swaps_per_pair;
  // Skip per-cluster certification.
  bool certify = true;
};

// `num_clusters` disjoint d-regular configuration-model clusters of
// `cluster_size` vertices, joined in a ring by degree-preserving swaps
// (a,b),(x,y) -> (a,x),(b,y). Each swap adds two cross edges.
absl::StatusOr<PlantedInstance> GeneratePlantedClusters(
    int num_clusters, size_t cluster_size, uint32_t d, uint64_t seed,
    const BridgeOptions& bridge = {});

// Planted (k, phi)-clusterable instance: k clusters, optionally bridged.
absl::StatusOr<PlantedInstance> GenerateClusterable(
    int k, size_t cluster_size, uint32_t d, uint64_t seed,
    const BridgeOptions& bridge = {});

// Planted (k, phi_out, beta)-unclusterable instance: k+1 clusters with
// external conductance at most phi_out. A positive phi_out too small for a
// single swap is reported as infeasible.
absl::StatusOr<PlantedInstance> GenerateUnclusterable(
    int k, size_t cluster_size, uint32_t d, double phi_out, uint64_t seed,
    std::optional<uint64_t> swaps_per_pair = std::nullopt);

enum class ParityCase { kYes, kNo };
const char* ParityCaseName(ParityCase c);

struct NoisyParitiesInstance {
  Graph graph;
  uint32_t d = 0;
  double eps = 0.0;
  ParityCase parity_case = ParityCase::kYes;
  // Per vertex; empty in the YES case.
  std::vector<uint8_t> x;
  // Per edge; empty in the YES case.
  std::vector<uint8_t> z;
  // Per edge label.
  std::vector<uint8_t> y;
};

// Labels every edge object once. NO: y = x(u) ^ x(v) ^ z with z ~ Ber(eps).
// YES: y uniform.
absl::StatusOr<NoisyParitiesInstance> LabelNoisyParities(Graph g, double eps,
                                                         ParityCase c,
                                                         uint64_t seed);

absl::StatusOr<NoisyParitiesInstance> GenerateNoisyParities(size_t n,
                                                            uint32_t d,
                                                            double eps,
                                                            ParityCase c,
                                                            uint64_t seed);

// Appends d - deg(v) unit loops at every vertex. Requires max degree <= d.
absl::StatusOr<Graph> AddSelfLoopsToDegree(const Graph& g, uint32_t d);

}  // namespace clustertest

#endif  // CLUSTERTEST_GENERATORS_H_
