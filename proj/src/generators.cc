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

#include "clustertest/generators.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "clustertest/random.h"

namespace clustertest {

std::vector<Edge> EdgesFromPairings(const std::vector<Edge>& pairings) {
  std::vector<Edge> edges;
  edges.reserve(pairings.size() + pairings.size() / 8);
  for (const Edge& p : pairings) {
    edges.push_back(p);
    if (p.is_loop()) edges.push_back(p);
  }
  return edges;
}

absl::StatusOr<std::vector<Edge>> ConfigurationPairings(size_t n, uint32_t d,
                                                        uint64_t seed) {
  if (n == 0) return absl::InvalidArgumentError("n must be positive");
  if (d == 0) return absl::InvalidArgumentError("d must be positive");
  if ((static_cast<uint64_t>(n) * d) % 2 != 0) {
    return absl::InvalidArgumentError("n * d must be even");
  }
  std::vector<uint64_t> half(static_cast<uint64_t>(n) * d);
  std::iota(half.begin(), half.end(), uint64_t{0});
  Rng rng(seed, {kTagGenerator});
  rng.Shuffle(half);
  std::vector<Edge> pairings(half.size() / 2);
  for (size_t i = 0; i < pairings.size(); ++i) {
    pairings[i] = {static_cast<Vertex>(half[2 * i] / d),
                   static_cast<Vertex>(half[2 * i + 1] / d)};
  }
  return pairings;
}

absl::StatusOr<Graph> GenerateConfigurationModel(size_t n, uint32_t d,
                                                 uint64_t seed) {
  absl::StatusOr<std::vector<Edge>> pairings = ConfigurationPairings(n, d, seed);
  if (!pairings.ok()) return pairings.status();
  return Graph::FromEdges(n, EdgesFromPairings(*pairings));
}

absl::StatusOr<PlantedInstance> GeneratePlantedClusters(
    int num_clusters, size_t cluster_size, uint32_t d, uint64_t seed,
    const BridgeOptions& bridge) {
  if (num_clusters < 1) {
    return absl::InvalidArgumentError("need at least one cluster");
  }
  if (!(bridge.phi_out >= 0.0 && bridge.phi_out < 1.0)) {
    return absl::InvalidArgumentError("phi_out must lie in [0, 1)");
  }
  const int c = num_clusters;
  std::vector<std::vector<Edge>> pairings(c);
  for (int i = 0; i < c; ++i) {
    absl::StatusOr<std::vector<Edge>> p =
        ConfigurationPairings(cluster_size, d, DeriveSeed(seed, {kTagGenerator,
                                                                static_cast<uint64_t>(i)}));
    if (!p.ok()) return p.status();
    const Vertex offset = static_cast<Vertex>(i * cluster_size);
    for (Edge& e : *p) {
      e.u += offset;
      e.v += offset;
    }
    pairings[i] = std::move(*p);
  }

  std::vector<std::pair<int, int>> ring;
  if (c == 2) ring = {{0, 1}};
  if (c >= 3) {
    for (int i = 0; i < c; ++i) ring.push_back({i, (i + 1) % c});
  }
  const uint64_t ring_degree = c == 2 ? 1 : 2;
  uint64_t swaps = 0;
  if (bridge.swaps_per_pair.has_value()) {
    swaps = *bridge.swaps_per_pair;
  } else if (bridge.phi_out > 0.0 && c >= 2) {
    // cut(C_i) = 2 * swaps * ring_degree, vol(C_i) = d * cluster_size.
    swaps = static_cast<uint64_t>(std::floor(
        bridge.phi_out * d * cluster_size / (2.0 * ring_degree)));
    if (swaps == 0) {
      return absl::FailedPreconditionError(absl::StrCat(
          "infeasible: phi_out=", bridge.phi_out,
          " admits no cross edge at cluster volume ", d * cluster_size));
    }
  }

  if (swaps > 0 && !ring.empty()) {
    Rng rng(seed, {kTagBridge});
    // Per cluster, a shuffled queue of non-loop pairing indices.
    std::vector<std::vector<size_t>> pool(c);
    for (int i = 0; i < c; ++i) {
      for (size_t j = 0; j < pairings[i].size(); ++j) {
        if (!pairings[i][j].is_loop()) pool[i].push_back(j);
      }
      rng.Shuffle(pool[i]);
      if (pool[i].size() < swaps * ring_degree) {
        return absl::FailedPreconditionError(absl::StrCat(
            "infeasible: cluster ", i, " has too few edges for ", swaps,
            " swaps per neighbor"));
      }
    }
    std::vector<size_t> next(c, 0);
    for (auto [i, j] : ring) {
      for (uint64_t s = 0; s < swaps; ++s) {
        Edge& e1 = pairings[i][pool[i][next[i]++]];
        Edge& e2 = pairings[j][pool[j][next[j]++]];
        const Edge a{e1.u, e2.u}, b{e1.v, e2.v};
        e1 = a;
        e2 = b;
      }
    }
  }

  std::vector<Edge> all;
  for (const auto& p : pairings) all.insert(all.end(), p.begin(), p.end());
  absl::StatusOr<Graph> g = Graph::FromEdges(c * cluster_size,
                                             EdgesFromPairings(all));
  if (!g.ok()) return g.status();

  PlantedInstance inst;
  inst.graph = std::move(*g);
  inst.num_clusters = c;
  inst.cross_swaps_per_pair = ring.empty() ? 0 : swaps;
  inst.cluster_of.resize(c * cluster_size);
  inst.clusters.resize(c);
  for (int i = 0; i < c; ++i) {
    for (size_t j = 0; j < cluster_size; ++j) {
      const Vertex v = static_cast<Vertex>(i * cluster_size + j);
      inst.cluster_of[v] = i;
      inst.clusters[i].push_back(v);
    }
  }
  const double vol = static_cast<double>(inst.graph.volume());
  inst.beta = std::numeric_limits<double>::infinity();
  inst.certified_phi_in = std::numeric_limits<double>::infinity();
  for (int i = 0; i < c; ++i) {
    inst.beta = std::min(inst.beta, inst.graph.Volume(inst.clusters[i]) * c / vol);
    inst.measured_phi_out = std::max(
        inst.measured_phi_out, ExternalConductance(inst.graph, inst.clusters[i]));
  }
  if (bridge.certify) {
    for (int i = 0; i < c; ++i) {
      absl::StatusOr<ClusterCertificate> cert =
          CertifyCluster(inst.graph, inst.clusters[i]);
      if (!cert.ok()) return cert.status();
      inst.certified_phi_in =
          std::min(inst.certified_phi_in, cert->internal_lower_bound);
      inst.certificates.push_back(*cert);
    }
  } else {
    inst.certified_phi_in = 0.0;
  }
  return inst;
}

absl::StatusOr<PlantedInstance> GenerateClusterable(int k, size_t cluster_size,
                                                    uint32_t d, uint64_t seed,
                                                    const BridgeOptions& bridge) {
  if (k < 1) return absl::InvalidArgumentError("k must be at least 1");
  return GeneratePlantedClusters(k, cluster_size, d, seed, bridge);
}

absl::StatusOr<PlantedInstance> GenerateUnclusterable(
    int k, size_t cluster_size, uint32_t d, double phi_out, uint64_t seed,
    std::optional<uint64_t> swaps_per_pair) {
  if (k < 0) return absl::InvalidArgumentError("k must be non-negative");
  BridgeOptions bridge;
  bridge.phi_out = phi_out;
  bridge.swaps_per_pair = swaps_per_pair;
  absl::StatusOr<PlantedInstance> inst =
      GeneratePlantedClusters(k + 1, cluster_size, d, seed, bridge);
  if (!inst.ok()) return inst.status();
  if (!swaps_per_pair.has_value() && inst->measured_phi_out > phi_out) {
    return absl::InternalError("external conductance exceeds target");
  }
  return inst;
}

const char* ParityCaseName(ParityCase c) {
  return c == ParityCase::kYes ? "yes" : "no";
}

absl::StatusOr<NoisyParitiesInstance> LabelNoisyParities(Graph g, double eps,
                                                         ParityCase c,
                                                         uint64_t seed) {
  if (!(eps >= 0.0 && eps <= 0.5)) {
    return absl::InvalidArgumentError("eps must lie in [0, 1/2]");
  }
  NoisyParitiesInstance inst;
  inst.d = g.max_degree();
  inst.eps = eps;
  inst.parity_case = c;
  Rng rng(seed, {kTagLabels});
  const size_t m = g.num_edges();
  inst.y.resize(m);
  if (c == ParityCase::kYes) {
    for (size_t e = 0; e < m; ++e) inst.y[e] = rng.Next() & 1;
  } else {
    inst.x.resize(g.num_vertices());
    for (uint8_t& b : inst.x) b = rng.Next() & 1;
    inst.z.resize(m);
    for (size_t e = 0; e < m; ++e) {
      inst.z[e] = rng.Bernoulli(eps);
      const Edge& ed = g.edges()[e];
      inst.y[e] = inst.x[ed.u] ^ inst.x[ed.v] ^ inst.z[e];
    }
  }
  inst.graph = std::move(g);
  return inst;
}

absl::StatusOr<NoisyParitiesInstance> GenerateNoisyParities(size_t n,
                                                            uint32_t d,
                                                            double eps,
                                                            ParityCase c,
                                                            uint64_t seed) {
  if (!(eps >= 0.0 && eps <= 0.5)) {
    return absl::InvalidArgumentError("eps must lie in [0, 1/2]");
  }
  absl::StatusOr<Graph> g = GenerateConfigurationModel(n, d, seed);
  if (!g.ok()) return g.status();
  absl::StatusOr<NoisyParitiesInstance> inst =
      LabelNoisyParities(std::move(*g), eps, c, seed);
  if (inst.ok()) inst->d = d;
  return inst;
}

absl::StatusOr<Graph> AddSelfLoopsToDegree(const Graph& g, uint32_t d) {
  if (g.max_degree() > d) {
    return absl::InvalidArgumentError(absl::StrCat(
        "max degree ", g.max_degree(), " exceeds target ", d));
  }
  std::vector<Edge> edges = g.edges();
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    for (uint32_t j = g.degree(v); j < d; ++j) edges.push_back({v, v});
  }
  return Graph::FromEdges(g.num_vertices(), std::move(edges));
}

}  // namespace clustertest
