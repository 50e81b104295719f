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

#include "clustertest/graph.h"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "absl/strings/string_view.h"

namespace clustertest {

absl::StatusOr<Graph> Graph::FromEdges(size_t num_vertices,
                                       std::vector<Edge> edges) {
  if (num_vertices == 0) {
    return absl::InvalidArgumentError("graph must have at least one vertex");
  }
  if (num_vertices > std::numeric_limits<Vertex>::max() ||
      edges.size() > std::numeric_limits<uint32_t>::max() / 2) {
    return absl::InvalidArgumentError("graph too large");
  }
  Graph g;
  g.offsets_.assign(num_vertices + 1, 0);
  for (size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.u >= num_vertices || e.v >= num_vertices) {
      return absl::InvalidArgumentError(absl::StrCat(
          "edge ", i, " endpoint out of range: (", e.u, ", ", e.v, ")"));
    }
    ++g.offsets_[e.u + 1];
    if (!e.is_loop()) ++g.offsets_[e.v + 1];
  }
  for (size_t v = 0; v < num_vertices; ++v) g.offsets_[v + 1] += g.offsets_[v];
  g.targets_.resize(g.offsets_.back());
  g.edge_ids_.resize(g.offsets_.back());
  std::vector<uint32_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    g.targets_[fill[e.u]] = e.v;
    g.edge_ids_[fill[e.u]++] = static_cast<uint32_t>(i);
    if (!e.is_loop()) {
      g.targets_[fill[e.v]] = e.u;
      g.edge_ids_[fill[e.v]++] = static_cast<uint32_t>(i);
    }
  }
  g.edges_ = std::move(edges);
  return g;
}

uint32_t Graph::max_degree() const {
  uint32_t best = 0;
  for (size_t v = 0; v < num_vertices(); ++v) best = std::max(best, degree(v));
  return best;
}

uint32_t Graph::min_degree() const {
  uint32_t best = std::numeric_limits<uint32_t>::max();
  for (size_t v = 0; v < num_vertices(); ++v) best = std::min(best, degree(v));
  return best;
}

uint64_t Graph::Volume(std::span<const Vertex> subset) const {
  uint64_t vol = 0;
  for (Vertex v : subset) vol += degree(v);
  return vol;
}

namespace {

absl::Status ParseLine(absl::string_view line, size_t line_no, uint64_t& a,
                       uint64_t& b) {
  std::vector<absl::string_view> tokens =
      absl::StrSplit(line, absl::ByAnyChar(" \t,"), absl::SkipEmpty());
  if (tokens.size() != 2 || !absl::SimpleAtoi(tokens[0], &a) ||
      !absl::SimpleAtoi(tokens[1], &b)) {
    return absl::InvalidArgumentError(
        absl::StrCat("line ", line_no, ": expected two non-negative integers"));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<Graph> ParseEdgeList(absl::string_view text) {
  bool have_header = false;
  uint64_t n = 0, m = 0;
  std::vector<Edge> edges;
  size_t line_no = 0;
  for (absl::string_view raw : absl::StrSplit(text, '\n')) {
    ++line_no;
    absl::string_view line = absl::StripAsciiWhitespace(raw);
    if (line.empty() || line.front() == '#') continue;
    uint64_t a = 0, b = 0;
    if (absl::Status s = ParseLine(line, line_no, a, b); !s.ok()) return s;
    if (!have_header) {
      n = a;
      m = b;
      have_header = true;
      if (n == 0) return absl::InvalidArgumentError("n must be positive");
      if (m > std::numeric_limits<uint32_t>::max() / 2) {
        return absl::InvalidArgumentError("edge count too large");
      }
      edges.reserve(m);
      continue;
    }
    if (a >= n || b >= n) {
      return absl::InvalidArgumentError(absl::StrCat(
          "line ", line_no, ": endpoint out of range [0, ", n, ")"));
    }
    if (edges.size() == m) {
      return absl::InvalidArgumentError(
          absl::StrCat("more than the declared ", m, " edges"));
    }
    edges.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b)});
  }
  if (!have_header) return absl::InvalidArgumentError("missing header line");
  if (edges.size() != m) {
    return absl::InvalidArgumentError(absl::StrCat(
        "header declares ", m, " edges but found ", edges.size()));
  }
  return Graph::FromEdges(n, std::move(edges));
}

absl::StatusOr<Graph> LoadEdgeList(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseEdgeList(buf.str());
}

std::string FormatEdgeList(const Graph& g) {
  std::string out = absl::StrCat(g.num_vertices(), " ", g.num_edges(), "\n");
  for (const Edge& e : g.edges()) absl::StrAppend(&out, e.u, " ", e.v, "\n");
  return out;
}

}  // namespace clustertest
