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

#ifndef CLUSTERTEST_QUERY_ORACLE_H_
#define CLUSTERTEST_QUERY_ORACLE_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "clustertest/graph.h"
#include "clustertest/random.h"

namespace clustertest {

// Per-worker query counters. Merge() sums them.
struct QueryLedger {
  uint64_t vertex_queries = 0;
  uint64_t degree_queries = 0;
  uint64_t neighbor_queries = 0;

  uint64_t total() const {
    return vertex_queries + degree_queries + neighbor_queries;
  }
  void Merge(const QueryLedger& other) {
    vertex_queries += other.vertex_queries;
    degree_queries += other.degree_queries;
    neighbor_queries += other.neighbor_queries;
  }
  friend bool operator==(const QueryLedger&, const QueryLedger&) = default;
};

// Bounded-degree query model. Every call except num_vertices() and volume()
// is charged to the ledger.
class QueryAccess {
 public:
  virtual ~QueryAccess() = default;

  virtual size_t num_vertices() const = 0;
  // Exact total volume. Not charged.
  virtual uint64_t volume() const = 0;

  virtual Vertex RandomVertex(Rng& rng) = 0;
  virtual uint32_t Degree(Vertex v) = 0;
  // 1-based slot. Returns nullopt when i == 0 or i > deg(v).
  virtual std::optional<Vertex> Neighbor(Vertex v, uint32_t i) = 0;

  QueryLedger& ledger() { return ledger_; }
  const QueryLedger& ledger() const { return ledger_; }

 protected:
  QueryLedger ledger_;
};

class GraphOracle : public QueryAccess {
 public:
  explicit GraphOracle(const Graph& g) : g_(g) {}

  size_t num_vertices() const override { return g_.num_vertices(); }
  uint64_t volume() const override { return g_.volume(); }

  Vertex RandomVertex(Rng& rng) override {
    ++ledger_.vertex_queries;
    return static_cast<Vertex>(rng.UniformInt(g_.num_vertices()));
  }
  uint32_t Degree(Vertex v) override {
    ++ledger_.degree_queries;
    return g_.degree(v);
  }
  std::optional<Vertex> Neighbor(Vertex v, uint32_t i) override {
    ++ledger_.neighbor_queries;
    if (i == 0 || i > g_.degree(v)) return std::nullopt;
    return g_.neighbors(v)[i - 1];
  }

  const Graph& graph() const { return g_; }

 private:
  const Graph& g_;
};

struct SamplerOptions {
  // Multiplicative bias bound: every vertex is drawn with probability in
  // [(1 - eta) deg(v) / vol, (1 + eta) deg(v) / vol].
  double eta = 0.0;
  // Probability that a single attempt reports failure.
  double fail_probability = 0.0;
};

// Alias-table sampler over a degree-proportional distribution. With eta > 0
// the target is tilted by a +/- factor on alternating vertices, normalized so
// the multiplicative bound holds exactly. Each attempt costs one vertex and
// one degree query; failed attempts are retried.
class DegreeSampler {
 public:
  static absl::StatusOr<DegreeSampler> Create(const Graph& g,
                                              SamplerOptions options = {});

  // One attempt. nullopt means the attempt failed.
  std::optional<Vertex> TrySample(Rng& rng, QueryLedger& ledger) const;
  // Retries until success.
  Vertex Sample(Rng& rng, QueryLedger& ledger) const;

  // Exact per-vertex probability of the (tilted) target.
  const std::vector<double>& probabilities() const { return prob_; }

 private:
  std::vector<double> prob_;
  std::vector<double> alias_prob_;
  std::vector<uint32_t> alias_;
  double fail_probability_ = 0.0;
};

}  // namespace clustertest

#endif  // CLUSTERTEST_QUERY_ORACLE_H_
