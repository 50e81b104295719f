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

#ifndef CLUSTERTEST_GRAPH_H_
#define CLUSTERTEST_GRAPH_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace clustertest {

using Vertex = uint32_t;

struct Edge {
  Vertex u;
  Vertex v;
  bool is_loop() const { return u == v; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Undirected multigraph in CSR form. Parallel edges are distinct adjacency
// entries. A self-loop (v, v) appears once in adj(v) and adds 1 to deg(v).
// Adjacency order is edge-list order.
class Graph {
 public:
  Graph() = default;

  static absl::StatusOr<Graph> FromEdges(size_t num_vertices,
                                         std::vector<Edge> edges);

  size_t num_vertices() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  size_t num_edges() const { return edges_.size(); }
  uint64_t volume() const { return targets_.size(); }

  uint32_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets_.data() + offsets_[v], degree(v)};
  }
  // Edge ids aligned with neighbors(v).
  std::span<const uint32_t> incident_edges(Vertex v) const {
    return {edge_ids_.data() + offsets_[v], degree(v)};
  }

  const std::vector<Edge>& edges() const { return edges_; }
  uint32_t max_degree() const;
  uint32_t min_degree() const;

  // Sum of degrees over `subset`. Vertices may repeat.
  uint64_t Volume(std::span<const Vertex> subset) const;

 private:
  std::vector<uint32_t> offsets_;
  std::vector<Vertex> targets_;
  std::vector<uint32_t> edge_ids_;
  std::vector<Edge> edges_;
};

// Text format: a header line "n m" followed by m lines "u v" with
// 0-based endpoints. Blank lines and lines starting with '#' are ignored.
absl::StatusOr<Graph> ParseEdgeList(absl::string_view text);
absl::StatusOr<Graph> LoadEdgeList(const std::string& path);
std::string FormatEdgeList(const Graph& g);

}  // namespace clustertest

#endif  // CLUSTERTEST_GRAPH_H_
