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

#ifndef CLUSTERTEST_NOISY_PARITIES_GAME_H_
#define CLUSTERTEST_NOISY_PARITIES_GAME_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "clustertest/generators.h"
#include "clustertest/graph.h"
#include "clustertest/random.h"

namespace clustertest {

struct SessionOptions {
  size_t n = 0;
  uint32_t d = 3;
  double eps = 0.0;
  // nullopt draws the case with probability 1/2 from the session stream.
  std::optional<ParityCase> parity_case;
  uint64_t seed = 0;
  // Ball generation and error bookkeeping around non-forest edges.
  bool closure = false;
};

struct ResponseSlot {
  Vertex neighbor;
  uint32_t edge_id;
  uint8_t label;
  friend bool operator==(const ResponseSlot&, const ResponseSlot&) = default;
};

struct QueryResponse {
  // One entry per half-edge of the queried vertex, in slot order. A loop
  // occupies two slots with the same edge id.
  std::vector<ResponseSlot> slots;
  bool err = false;
  friend bool operator==(const QueryResponse&, const QueryResponse&) = default;
};

struct DiscoveredEdge {
  Vertex u;
  Vertex v;
  uint8_t label;
  // Noise bit; meaningful in the NO case only.
  uint8_t noise;
  bool forest;
};

// Adversary for the noisy-parities query game. The multigraph is built
// lazily: querying q pairs each free half-edge of q, in slot order, with a
// uniformly random other unpaired half-edge. In the NO case a forest edge
// gets a uniform label and fresh noise; a cycle-closing edge e = (u, v) gets
// Y(e) = Z(e) + sum over the forest path of (Y + Z), kept as a union-find
// potential with parity.
class InteractionSession {
 public:
  static absl::StatusOr<InteractionSession> Open(const SessionOptions& options);

  absl::StatusOr<QueryResponse> Query(Vertex q);

  size_t n() const { return n_; }
  uint32_t d() const { return d_; }
  double eps() const { return eps_; }
  uint64_t query_count() const { return query_count_; }
  bool err_flag() const { return err_; }
  bool queried(Vertex v) const { return queried_[v]; }

  // White-box accessors for tests and reports; not part of the player's view.
  ParityCase hidden_case() const { return case_; }
  const std::vector<DiscoveredEdge>& edges() const { return edges_; }
  // Radius b ln n of closure balls, b = 1 / (8 ln d).
  double closure_radius() const { return radius_; }
  size_t num_non_forest_edges() const { return non_forest_.size(); }

  // Graph of all discovered edges (loop pairings become two unit loops).
  Graph DiscoveredGraph() const;

 private:
  InteractionSession() = default;

  uint32_t PairHalfEdge(uint64_t h);
  uint32_t CreateEdge(uint64_t h1, uint64_t h2);
  std::pair<uint32_t, uint8_t> Find(Vertex v);
  // Forest distances from `src` up to floor(radius_).
  std::vector<Vertex> ForestBall(Vertex src) const;
  void CheckClosure(uint32_t edge_id);
  void GenerateBall(Vertex center);
  void RemoveFromPool(uint64_t h);

  size_t n_ = 0;
  uint32_t d_ = 0;
  double eps_ = 0.0;
  ParityCase case_ = ParityCase::kYes;
  bool closure_ = false;
  double radius_ = 0.0;
  Rng rng_{0};

  std::vector<int64_t> partner_;
  std::vector<uint32_t> edge_of_half_;
  std::vector<uint64_t> pool_;
  std::vector<uint64_t> pool_pos_;
  std::vector<bool> queried_;
  std::vector<DiscoveredEdge> edges_;
  std::vector<uint32_t> uf_parent_;
  std::vector<uint8_t> uf_parity_;
  std::vector<uint32_t> uf_size_;
  std::vector<std::vector<std::pair<Vertex, uint32_t>>> forest_adj_;
  std::vector<uint32_t> non_forest_;
  std::vector<bool> near_non_forest_;
  bool in_ball_ = false;
  bool err_ = false;
  uint64_t query_count_ = 0;
};

struct CycleSumConfig {
  // Defaults tuned at n = 10^4, d = 3, eps = 0.05 with about n^0.65 queries;
  // short walks keep the found cycles short and strongly biased.
  uint32_t num_seeds = 24;
  uint32_t walks_per_seed = 300;
  uint32_t walk_len = 7;
  // Stop issuing queries once this many were made; 0 means unlimited.
  uint64_t max_queries = 0;
  uint64_t player_seed = 0;
};

struct FoundCycle {
  uint32_t length;
  uint8_t zeta;
};

struct CycleSumResult {
  ParityCase guess = ParityCase::kYes;
  bool abstained = false;
  std::vector<FoundCycle> cycles;
  double mean_length = 0.0;
  double zero_fraction = 0.0;
  double threshold = 0.0;
  uint64_t queries = 0;
};

// Collides non-backtracking walks from random seeds to find vertex-disjoint
// cycles, sums labels around each, and guesses NO iff the fraction of
// zero sums exceeds (1/2)(1 + (1-2 eps)^{mean length} / 2). With no cycle
// the guess is a coin flip.
absl::StatusOr<CycleSumResult> RunCycleSumDistinguisher(
    InteractionSession& session, const CycleSumConfig& config);

}  // namespace clustertest

#endif  // CLUSTERTEST_NOISY_PARITIES_GAME_H_
