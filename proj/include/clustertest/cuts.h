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

#ifndef CLUSTERTEST_CUTS_H_
#define CLUSTERTEST_CUTS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "clustertest/graph.h"

namespace clustertest {

inline constexpr size_t kExactConductanceLimit = 24;

// Number of edges with exactly one endpoint in S. Loops never cross.
uint64_t CutSize(const Graph& g, const std::vector<bool>& in_s);

// cut(C, V \ C) / vol(C).
double ExternalConductance(const Graph& g, std::span<const Vertex> cluster);

// min over S in C with 0 < vol(S) <= vol(C)/2 of e(S, C \ S) / vol(S), with
// volumes taken in g. Exhaustive; |C| <= kExactConductanceLimit.
absl::StatusOr<double> ExactInternalConductance(const Graph& g,
                                                std::span<const Vertex> cluster);

// g[C] padded with loops so every vertex keeps its degree in g. Internal
// conductance of C in g equals the conductance of this graph.
Graph PaddedInducedSubgraph(const Graph& g, std::span<const Vertex> cluster);

// lambda_2(L) / 2 of the padded induced subgraph: a lower bound on the
// internal conductance of C.
absl::StatusOr<double> CheegerInternalLowerBound(
    const Graph& g, std::span<const Vertex> cluster);

struct ClusterCertificate {
  enum class Method { kExact, kCheeger };
  Method method;
  // Certified lower bound on the internal conductance.
  double internal_lower_bound;
  double external_conductance;
  uint64_t volume;
};

absl::StatusOr<ClusterCertificate> CertifyCluster(
    const Graph& g, std::span<const Vertex> cluster);

}  // namespace clustertest

#endif  // CLUSTERTEST_CUTS_H_
