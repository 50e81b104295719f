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

#include "clustertest/noisy_parities_game.h"

#include <cmath>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace clustertest {

absl::StatusOr<InteractionSession> InteractionSession::Open(
    const SessionOptions& options) {
  if (options.n == 0) return absl::InvalidArgumentError("n must be positive");
  if (options.d < 3) return absl::InvalidArgumentError("d must be at least 3");
  if ((static_cast<uint64_t>(options.n) * options.d) % 2 != 0) {
    return absl::InvalidArgumentError("n * d must be even");
  }
  if (!(options.eps >= 0.0 && options.eps <= 0.5)) {
    return absl::InvalidArgumentError("eps must lie in [0, 1/2]");
  }
  InteractionSession s;
  s.n_ = options.n;
  s.d_ = options.d;
  s.eps_ = options.eps;
  s.closure_ = options.closure;
  s.radius_ = std::log(static_cast<double>(options.n)) /
              (8.0 * std::log(static_cast<double>(options.d)));
  s.rng_ = Rng(options.seed, {kTagSession});
  if (options.parity_case.has_value()) {
    s.case_ = *options.parity_case;
  } else {
    s.case_ = (s.rng_.Next() & 1) ? ParityCase::kNo : ParityCase::kYes;
  }
  const uint64_t halves = static_cast<uint64_t>(options.n) * options.d;
  s.partner_.assign(halves, -1);
  s.edge_of_half_.assign(halves, 0);
  s.pool_.resize(halves);
  s.pool_pos_.resize(halves);
  for (uint64_t h = 0; h < halves; ++h) s.pool_[h] = s.pool_pos_[h] = h;
  s.queried_.assign(options.n, false);
  s.uf_parent_.resize(options.n);
  for (size_t v = 0; v < options.n; ++v) s.uf_parent_[v] = v;
  s.uf_parity_.assign(options.n, 0);
  s.uf_size_.assign(options.n, 1);
  s.forest_adj_.resize(options.n);
  s.near_non_forest_.assign(options.n, false);
  return s;
}

void InteractionSession::RemoveFromPool(uint64_t h) {
  const uint64_t pos = pool_pos_[h];
  const uint64_t last = pool_.back();
  pool_[pos] = last;
  pool_pos_[last] = pos;
  pool_.pop_back();
}

std::pair<uint32_t, uint8_t> InteractionSession::Find(Vertex v) {
  // Parity of v relative to its root, then compress.
  uint32_t root = v;
  uint8_t parity = 0;
  while (uf_parent_[root] != root) {
    parity ^= uf_parity_[root];
    root = uf_parent_[root];
  }
  uint32_t cur = v;
  uint8_t cur_parity = parity;
  while (uf_parent_[cur] != root && cur != root) {
    const uint32_t next = uf_parent_[cur];
    const uint8_t next_parity = cur_parity ^ uf_parity_[cur];
    uf_parent_[cur] = root;
    uf_parity_[cur] = cur_parity;
    cur = next;
    cur_parity = next_parity;
  }
  return {root, parity};
}

uint32_t InteractionSession::CreateEdge(uint64_t h1, uint64_t h2) {
  const Vertex u = h1 / d_, v = h2 / d_;
  auto [ru, pu] = Find(u);
  auto [rv, pv] = Find(v);
  DiscoveredEdge e{u, v, 0, 0, ru != rv};
  if (case_ == ParityCase::kNo) e.noise = rng_.Bernoulli(eps_);
  if (e.forest || case_ == ParityCase::kYes) {
    e.label = rng_.Next() & 1;
  } else {
    e.label = e.noise ^ pu ^ pv;
  }
  const uint32_t id = edges_.size();
  if (e.forest) {
    // Potentials satisfy xhat(u) ^ xhat(v) = label ^ noise on forest edges.
    const uint8_t parity = pu ^ pv ^ e.label ^ e.noise;
    if (uf_size_[ru] < uf_size_[rv]) std::swap(ru, rv);
    uf_parent_[rv] = ru;
    uf_parity_[rv] = parity;
    uf_size_[ru] += uf_size_[rv];
    forest_adj_[u].push_back({v, id});
    forest_adj_[v].push_back({u, id});
  }
  edges_.push_back(e);
  partner_[h1] = h2;
  partner_[h2] = h1;
  edge_of_half_[h1] = edge_of_half_[h2] = id;
  return id;
}

uint32_t InteractionSession::PairHalfEdge(uint64_t h) {
  RemoveFromPool(h);
  const uint64_t other = pool_[rng_.UniformInt(pool_.size())];
  RemoveFromPool(other);
  return CreateEdge(h, other);
}

std::vector<Vertex> InteractionSession::ForestBall(Vertex src) const {
  const int64_t limit = static_cast<int64_t>(std::floor(radius_));
  std::unordered_map<Vertex, int64_t> dist{{src, 0}};
  std::deque<Vertex> frontier{src};
  std::vector<Vertex> ball{src};
  while (!frontier.empty()) {
    const Vertex x = frontier.front();
    frontier.pop_front();
    if (dist[x] == limit) continue;
    for (auto [y, id] : forest_adj_[x]) {
      if (dist.try_emplace(y, dist[x] + 1).second) {
        ball.push_back(y);
        frontier.push_back(y);
      }
    }
  }
  return ball;
}

void InteractionSession::CheckClosure(uint32_t edge_id) {
  const DiscoveredEdge& e = edges_[edge_id];
  if (e.forest) return;
  if (in_ball_) {
    // A second non-forest edge inside a generated ball.
    err_ = true;
    return;
  }
  // Loops, parallel edges and short cycles close within the forest ball.
  const std::vector<Vertex> ball_u = ForestBall(e.u);
  const std::vector<Vertex> ball_v = ForestBall(e.v);
  bool short_range = e.u == e.v;
  for (auto [y, id] : forest_adj_[e.u]) short_range |= y == e.v;
  for (Vertex x : ball_u) short_range |= x == e.v || near_non_forest_[x];
  for (Vertex x : ball_v) short_range |= near_non_forest_[x];
  if (short_range) {
    err_ = true;
    return;
  }
  near_non_forest_[e.u] = near_non_forest_[e.v] = true;
  non_forest_.push_back(edge_id);
  GenerateBall(e.u);
}

void InteractionSession::GenerateBall(Vertex center) {
  const int64_t limit = static_cast<int64_t>(std::floor(radius_));
  in_ball_ = true;
  std::unordered_map<Vertex, int64_t> depth{{center, 0}};
  std::deque<Vertex> frontier{center};
  while (!frontier.empty() && !err_) {
    const Vertex x = frontier.front();
    frontier.pop_front();
    if (depth[x] >= limit) continue;
    for (uint32_t i = 0; i < d_ && !err_; ++i) {
      const uint64_t h = static_cast<uint64_t>(x) * d_ + i;
      if (partner_[h] < 0) CheckClosure(PairHalfEdge(h));
      const Vertex y = partner_[h] / d_;
      if (depth.try_emplace(y, depth[x] + 1).second) frontier.push_back(y);
    }
  }
  in_ball_ = false;
}

absl::StatusOr<QueryResponse> InteractionSession::Query(Vertex q) {
  if (q >= n_) {
    return absl::InvalidArgumentError(absl::StrCat("vertex ", q, " out of range"));
  }
  QueryResponse response;
  if (err_) {
    response.err = true;
    return response;
  }
  if (queried_[q]) {
    return absl::FailedPreconditionError(
        absl::StrCat("vertex ", q, " was already queried"));
  }
  queried_[q] = true;
  ++query_count_;
  for (uint32_t i = 0; i < d_; ++i) {
    const uint64_t h = static_cast<uint64_t>(q) * d_ + i;
    if (partner_[h] < 0) {
      const uint32_t id = PairHalfEdge(h);
      if (closure_) CheckClosure(id);
      if (err_) {
        response.slots.clear();
        response.err = true;
        return response;
      }
    }
  }
  response.slots.reserve(d_);
  for (uint32_t i = 0; i < d_; ++i) {
    const uint64_t h = static_cast<uint64_t>(q) * d_ + i;
    const uint32_t id = edge_of_half_[h];
    response.slots.push_back(
        {static_cast<Vertex>(partner_[h] / d_), id, edges_[id].label});
  }
  return response;
}

Graph InteractionSession::DiscoveredGraph() const {
  std::vector<Edge> pairings;
  pairings.reserve(edges_.size());
  for (const DiscoveredEdge& e : edges_) pairings.push_back({e.u, e.v});
  return *Graph::FromEdges(n_, EdgesFromPairings(pairings));
}

namespace {

struct TreeNode {
  Vertex parent;
  uint32_t edge;
  uint8_t label;
  uint32_t depth;
};

}  // namespace

absl::StatusOr<CycleSumResult> RunCycleSumDistinguisher(
    InteractionSession& session, const CycleSumConfig& config) {
  if (config.num_seeds == 0 || config.walks_per_seed == 0 ||
      config.walk_len == 0) {
    return absl::InvalidArgumentError("budget parameters must be positive");
  }
  Rng rng(config.player_seed, {kTagPlayer});
  const size_t n = session.n();
  std::unordered_map<Vertex, QueryResponse> known;
  std::unordered_set<Vertex> used;
  CycleSumResult result;
  bool halted = false;

  // Returns nullptr when out of budget or after an adversary error.
  auto lookup = [&](Vertex v) -> absl::StatusOr<const QueryResponse*> {
    auto it = known.find(v);
    if (it != known.end()) return &it->second;
    if (config.max_queries > 0 && session.query_count() >= config.max_queries) {
      return nullptr;
    }
    absl::StatusOr<QueryResponse> r = session.Query(v);
    if (!r.ok()) return r.status();
    if (r->err) return nullptr;
    return &known.emplace(v, std::move(*r)).first->second;
  };

  for (uint32_t s = 0; s < config.num_seeds && !halted; ++s) {
    Vertex seed = static_cast<Vertex>(rng.UniformInt(n));
    for (int tries = 0; tries < 16 && used.contains(seed); ++tries) {
      seed = static_cast<Vertex>(rng.UniformInt(n));
    }
    if (used.contains(seed)) continue;
    std::unordered_map<Vertex, TreeNode> tree{{seed, {seed, 0, 0, 0}}};
    bool found = false;
    for (uint32_t w = 0; w < config.walks_per_seed && !found && !halted; ++w) {
      Vertex cur = seed;
      int64_t prev_edge = -1;
      for (uint32_t step = 0; step < config.walk_len; ++step) {
        absl::StatusOr<const QueryResponse*> resp = lookup(cur);
        if (!resp.ok()) return resp.status();
        if (*resp == nullptr) {
          halted = true;
          break;
        }
        std::vector<const ResponseSlot*> options;
        for (const ResponseSlot& slot : (*resp)->slots) {
          if (static_cast<int64_t>(slot.edge_id) != prev_edge) options.push_back(&slot);
        }
        if (options.empty()) break;
        const ResponseSlot& next = *options[rng.UniformInt(options.size())];
        auto it = tree.find(next.neighbor);
        if (it == tree.end()) {
          tree[next.neighbor] = {cur, next.edge_id, next.label,
                                 tree[cur].depth + 1};
          cur = next.neighbor;
          prev_edge = next.edge_id;
          continue;
        }
        const TreeNode& nb = it->second;
        const TreeNode& here = tree[cur];
        const bool tree_edge =
            (next.neighbor != seed && nb.parent == cur && nb.edge == next.edge_id) ||
            (cur != seed && here.parent == next.neighbor && here.edge == next.edge_id);
        if (tree_edge) {
          cur = next.neighbor;
          prev_edge = next.edge_id;
          continue;
        }
        // Non-tree edge closes a cycle through the lowest common ancestor.
        Vertex a = cur, b = next.neighbor;
        std::vector<Vertex> vertices;
        uint32_t length = 1;
        uint8_t zeta = next.label;
        while (a != b) {
          if (tree[a].depth >= tree[b].depth) {
            vertices.push_back(a);
            zeta ^= tree[a].label;
            a = tree[a].parent;
          } else {
            vertices.push_back(b);
            zeta ^= tree[b].label;
            b = tree[b].parent;
          }
          ++length;
        }
        vertices.push_back(a);
        found = true;
        bool disjoint = true;
        for (Vertex v : vertices) disjoint &= !used.contains(v);
        if (disjoint) {
          used.insert(vertices.begin(), vertices.end());
          result.cycles.push_back({length, zeta});
        }
        break;
      }
    }
  }

  result.queries = session.query_count();
  if (result.cycles.empty()) {
    result.abstained = true;
    result.guess = (rng.Next() & 1) ? ParityCase::kNo : ParityCase::kYes;
    return result;
  }
  double zeros = 0.0, total_length = 0.0;
  for (const FoundCycle& c : result.cycles) {
    zeros += c.zeta == 0;
    total_length += c.length;
  }
  const double count = static_cast<double>(result.cycles.size());
  result.zero_fraction = zeros / count;
  result.mean_length = total_length / count;
  result.threshold =
      0.5 * (1.0 + std::pow(1.0 - 2.0 * session.eps(), result.mean_length) / 2.0);
  result.guess = result.zero_fraction > result.threshold ? ParityCase::kNo
                                                         : ParityCase::kYes;
  return result;
}

}  // namespace clustertest
