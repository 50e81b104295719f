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

#include "clustertest/cuts.h"

#include <bit>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "clustertest/spectral.h"

namespace clustertest {

uint64_t CutSize(const Graph& g, const std::vector<bool>& in_s) {
  uint64_t cut = 0;
  for (const Edge& e : g.edges()) cut += in_s[e.u] != in_s[e.v];
  return cut;
}

double ExternalConductance(const Graph& g, std::span<const Vertex> cluster) {
  std::vector<bool> in_c(g.num_vertices(), false);
  for (Vertex v : cluster) in_c[v] = true;
  const uint64_t vol = g.Volume(cluster);
  return vol == 0 ? 0.0 : static_cast<double>(CutSize(g, in_c)) / vol;
}

absl::StatusOr<double> ExactInternalConductance(
    const Graph& g, std::span<const Vertex> cluster) {
  const size_t c = cluster.size();
  if (c == 0) return absl::InvalidArgumentError("empty cluster");
  if (c > kExactConductanceLimit) {
    return absl::InvalidArgumentError(absl::StrCat(
        "exhaustive conductance limited to ", kExactConductanceLimit,
        " vertices"));
  }
  std::vector<int> local(g.num_vertices(), -1);
  for (size_t i = 0; i < c; ++i) local[cluster[i]] = static_cast<int>(i);
  // Internal non-loop neighbors as local indices, and degrees in g.
  std::vector<std::vector<int>> adj(c);
  std::vector<uint64_t> deg(c);
  uint64_t vol_c = 0;
  for (size_t i = 0; i < c; ++i) {
    deg[i] = g.degree(cluster[i]);
    vol_c += deg[i];
    for (Vertex u : g.neighbors(cluster[i])) {
      if (local[u] >= 0 && local[u] != static_cast<int>(i)) {
        adj[i].push_back(local[u]);
      }
    }
  }
  if (c == 1) return 1.0;
  // Gray-code walk over all subsets, maintaining e(S, C\S) and vol(S).
  std::vector<bool> in_s(c, false);
  int64_t cut = 0;
  uint64_t vol_s = 0;
  double best = std::numeric_limits<double>::infinity();
  const uint64_t total = uint64_t{1} << c;
  for (uint64_t step = 1; step < total; ++step) {
    const int i = std::countr_zero(step);
    const bool entering = !in_s[i];
    int64_t inside = 0;
    for (int u : adj[i]) inside += in_s[u];
    const int64_t outside = static_cast<int64_t>(adj[i].size()) - inside;
    if (entering) {
      cut += outside - inside;
      vol_s += deg[i];
    } else {
      cut -= outside - inside;
      vol_s -= deg[i];
    }
    in_s[i] = entering;
    if (vol_s > 0 && 2 * vol_s <= vol_c) {
      best = std::min(best, static_cast<double>(cut) / vol_s);
    }
  }
  return best;
}

Graph PaddedInducedSubgraph(const Graph& g, std::span<const Vertex> cluster) {
  std::vector<int64_t> local(g.num_vertices(), -1);
  for (size_t i = 0; i < cluster.size(); ++i) local[cluster[i]] = i;
  std::vector<Edge> edges;
  std::vector<uint32_t> internal_deg(cluster.size(), 0);
  for (const Edge& e : g.edges()) {
    if (local[e.u] < 0 || local[e.v] < 0) continue;
    const Vertex a = local[e.u], b = local[e.v];
    edges.push_back({a, b});
    ++internal_deg[a];
    if (a != b) ++internal_deg[b];
  }
  for (size_t i = 0; i < cluster.size(); ++i) {
    for (uint32_t j = internal_deg[i]; j < g.degree(cluster[i]); ++j) {
      edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i)});
    }
  }
  return *Graph::FromEdges(cluster.size(), std::move(edges));
}

absl::StatusOr<double> CheegerInternalLowerBound(
    const Graph& g, std::span<const Vertex> cluster) {
  if (cluster.empty()) return absl::InvalidArgumentError("empty cluster");
  if (cluster.size() == 1) return 1.0;
  Graph padded = PaddedInducedSubgraph(g, cluster);
  absl::StatusOr<std::vector<double>> spec = LaplacianSpectrum(padded, 2);
  if (!spec.ok()) return spec.status();
  return (*spec)[1] / 2.0;
}

absl::StatusOr<ClusterCertificate> CertifyCluster(
    const Graph& g, std::span<const Vertex> cluster) {
  ClusterCertificate cert;
  cert.volume = g.Volume(cluster);
  cert.external_conductance = ExternalConductance(g, cluster);
  absl::StatusOr<double> bound;
  if (cluster.size() <= kExactConductanceLimit) {
    cert.method = ClusterCertificate::Method::kExact;
    bound = ExactInternalConductance(g, cluster);
  } else {
    cert.method = ClusterCertificate::Method::kCheeger;
    bound = CheegerInternalLowerBound(g, cluster);
  }
  if (!bound.ok()) return bound.status();
  cert.internal_lower_bound = *bound;
  return cert;
}

}  // namespace clustertest
