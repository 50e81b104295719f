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
#include <map>
#include <numeric>
#include <vector>

#include "clustertest/cuts.h"
#include "clustertest/random.h"
#include "gtest/gtest.h"

namespace clustertest {
namespace {

TEST(ConfigurationModelTest, EveryVertexHasDegreeD) {
  for (uint32_t d : {3u, 4u, 12u}) {
    auto g = GenerateConfigurationModel(200, d, d);
    ASSERT_TRUE(g.ok());
    for (Vertex v = 0; v < 200; ++v) ASSERT_EQ(g->degree(v), d);
  }
}

TEST(ConfigurationModelTest, ReproduciblePerSeed) {
  auto a = GenerateConfigurationModel(100, 5 + 1, 17);
  auto b = GenerateConfigurationModel(100, 6, 17);
  auto c = GenerateConfigurationModel(100, 6, 18);
  EXPECT_EQ(a->edges(), b->edges());
  EXPECT_NE(a->edges(), c->edges());
}

TEST(ConfigurationModelTest, RejectsOddHalfEdgeCount) {
  EXPECT_FALSE(GenerateConfigurationModel(5, 3, 1).ok());
  EXPECT_FALSE(GenerateConfigurationModel(0, 4, 1).ok());
}

// Over 6 half-edges there are 15 perfect matchings; each must be equally
// likely.
TEST(ConfigurationModelTest, PairingIsUniformOverMatchings) {
  std::map<std::vector<std::pair<uint64_t, uint64_t>>, int> counts;
  const int draws = 60000;
  for (int s = 0; s < draws; ++s) {
    // Vertex ids are half-edge ids when d = 1.
    auto p = ConfigurationPairings(6, 1, s);
    ASSERT_TRUE(p.ok());
    std::vector<std::pair<uint64_t, uint64_t>> m;
    for (const Edge& e : *p) m.push_back({std::min(e.u, e.v), std::max(e.u, e.v)});
    std::sort(m.begin(), m.end());
    ++counts[m];
  }
  ASSERT_EQ(counts.size(), 15u);
  double chi2 = 0.0;
  const double expected = draws / 15.0;
  for (const auto& [m, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
  // 14 degrees of freedom; 0.999 quantile 36.1.
  EXPECT_LT(chi2, 36.1);
}

TEST(EdgesFromPairingsTest, LoopPairingBecomesTwoUnitLoops) {
  std::vector<Edge> edges = EdgesFromPairings({{0, 1}, {2, 2}});
  ASSERT_EQ(edges.size(), 3u);
  EXPECT_EQ(edges[1], (Edge{2, 2}));
  EXPECT_EQ(edges[2], (Edge{2, 2}));
}

TEST(PlantedClustersTest, DisjointUnionHasNoCrossEdges) {
  auto inst = GenerateClusterable(3, 30, 6, 4);
  ASSERT_TRUE(inst.ok());
  EXPECT_EQ(inst->num_clusters, 3);
  EXPECT_EQ(inst->measured_phi_out, 0.0);
  EXPECT_DOUBLE_EQ(inst->beta, 1.0);
  for (const Edge& e : inst->graph.edges()) {
    EXPECT_EQ(inst->cluster_of[e.u], inst->cluster_of[e.v]);
  }
  for (Vertex v = 0; v < inst->graph.num_vertices(); ++v) {
    EXPECT_EQ(inst->graph.degree(v), 6u);
  }
}

TEST(PlantedClustersTest, BridgedCutMatchesSwapCount) {
  for (int c : {2, 3, 4}) {
    BridgeOptions bridge;
    bridge.phi_out = 0.021;
    auto inst = GeneratePlantedClusters(c, 200, 12, 11, bridge);
    ASSERT_TRUE(inst.ok()) << inst.status();
    const uint64_t ring_degree = c == 2 ? 1 : 2;
    const uint64_t swaps = inst->cross_swaps_per_pair;
    // floor(0.021 * 12 * 200 / (2 * ring_degree)).
    EXPECT_EQ(swaps, c == 2 ? 25u : 12u);
    for (int i = 0; i < c; ++i) {
      std::vector<bool> in(inst->graph.num_vertices(), false);
      for (Vertex v : inst->clusters[i]) in[v] = true;
      EXPECT_EQ(CutSize(inst->graph, in), 2 * swaps * ring_degree);
      EXPECT_LE(ExternalConductance(inst->graph, inst->clusters[i]), 0.021);
    }
    for (Vertex v = 0; v < inst->graph.num_vertices(); ++v) {
      ASSERT_EQ(inst->graph.degree(v), 12u);
    }
  }
}

TEST(PlantedClustersTest, TooSmallPhiOutIsInfeasible) {
  auto inst = GenerateUnclusterable(1, 20, 4, 0.001, 1);
  EXPECT_EQ(inst.status().code(), absl::StatusCode::kFailedPrecondition);
  auto forced = GenerateUnclusterable(1, 20, 4, 0.001, 1, uint64_t{1});
  EXPECT_TRUE(forced.ok());
}

TEST(PlantedClustersTest, UnclusterableHasKPlusOneClustersWithinPhiOut) {
  for (int k = 1; k <= 3; ++k) {
    auto inst = GenerateUnclusterable(k, 100, 12, 0.01, k);
    ASSERT_TRUE(inst.ok()) << inst.status();
    EXPECT_EQ(inst->num_clusters, k + 1);
    for (const auto& cluster : inst->clusters) {
      EXPECT_LE(ExternalConductance(inst->graph, cluster), 0.01);
      EXPECT_GE(static_cast<double>(inst->graph.Volume(cluster)),
                inst->beta / (k + 1) * inst->graph.volume() - 1e-9);
    }
  }
}

TEST(PlantedClustersTest, CertificatesAreLowerBounds) {
  auto inst = GenerateClusterable(2, 20, 6, 3);
  ASSERT_TRUE(inst.ok());
  for (size_t i = 0; i < inst->clusters.size(); ++i) {
    const auto& cert = inst->certificates[i];
    EXPECT_EQ(cert.method, ClusterCertificate::Method::kExact);
    auto cheeger = CheegerInternalLowerBound(inst->graph, inst->clusters[i]);
    ASSERT_TRUE(cheeger.ok());
    EXPECT_LE(*cheeger, cert.internal_lower_bound + 1e-12);
  }
}

TEST(NoisyParitiesTest, NoCaseLabelsAreParityPlusNoise) {
  auto inst = GenerateNoisyParities(500, 12, 0.1, ParityCase::kNo, 5);
  ASSERT_TRUE(inst.ok());
  ASSERT_EQ(inst->y.size(), inst->graph.num_edges());
  int noisy = 0;
  for (size_t e = 0; e < inst->y.size(); ++e) {
    const Edge& ed = inst->graph.edges()[e];
    ASSERT_EQ(inst->y[e], inst->x[ed.u] ^ inst->x[ed.v] ^ inst->z[e]);
    noisy += inst->z[e];
  }
  EXPECT_NEAR(static_cast<double>(noisy) / inst->y.size(), 0.1, 0.02);
}

TEST(NoisyParitiesTest, YesCaseLabelsAreBalanced) {
  auto inst = GenerateNoisyParities(500, 12, 0.1, ParityCase::kYes, 5);
  ASSERT_TRUE(inst.ok());
  EXPECT_TRUE(inst->x.empty());
  const int ones = std::accumulate(inst->y.begin(), inst->y.end(), 0);
  EXPECT_NEAR(static_cast<double>(ones) / inst->y.size(), 0.5, 0.03);
}

TEST(NoisyParitiesTest, RejectsBadEps) {
  EXPECT_FALSE(GenerateNoisyParities(10, 2, 0.6, ParityCase::kNo, 1).ok());
}

TEST(SelfLoopsTest, PreservesEveryCut) {
  auto g = Graph::FromEdges(8, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}, {5, 6},
                                {6, 7}, {0, 4}, {2, 6}, {1, 1}});
  ASSERT_TRUE(g.ok());
  auto padded = AddSelfLoopsToDegree(*g, 5);
  ASSERT_TRUE(padded.ok());
  for (Vertex v = 0; v < 8; ++v) EXPECT_EQ(padded->degree(v), 5u);
  for (uint32_t mask = 0; mask < 256; ++mask) {
    std::vector<bool> s(8);
    for (int i = 0; i < 8; ++i) s[i] = mask >> i & 1;
    ASSERT_EQ(CutSize(*g, s), CutSize(*padded, s));
  }
  EXPECT_FALSE(AddSelfLoopsToDegree(*g, 2).ok());
}

}  // namespace
}  // namespace clustertest
