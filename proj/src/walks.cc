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

#include "clustertest/walks.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace clustertest {
namespace {

class DegreeCache {
 public:
  explicit DegreeCache(QueryAccess& g) : g_(g) {}
  double Get(Vertex v) {
    auto [it, inserted] = cache_.try_emplace(v, 0);
    if (inserted) it->second = g_.Degree(v);
    return it->second;
  }

 private:
  QueryAccess& g_;
  std::unordered_map<Vertex, uint32_t> cache_;
};

// sum_i c_a(i) c_b(i) / deg(i) over the common support.
double WeightedOverlap(const EndpointDistribution& a,
                       const EndpointDistribution& b, DegreeCache& deg) {
  double sum = 0.0;
  auto ia = a.counts.begin(), ib = b.counts.begin();
  while (ia != a.counts.end() && ib != b.counts.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      sum += static_cast<double>(ia->second) * ib->second / deg.Get(ia->first);
      ++ia;
      ++ib;
    }
  }
  return sum;
}

}  // namespace

Vertex LazyWalk(QueryAccess& g, Vertex start, int64_t t, Rng& rng) {
  Vertex v = start;
  for (int64_t step = 0; step < t; ++step) {
    if (rng.Next() & 1) continue;
    const uint32_t deg = g.Degree(v);
    if (deg == 0) continue;
    const uint32_t slot = 1 + static_cast<uint32_t>(rng.UniformInt(deg));
    v = *g.Neighbor(v, slot);
  }
  return v;
}

double EndpointDistribution::Probability(Vertex v) const {
  auto it = std::lower_bound(
      counts.begin(), counts.end(), v,
      [](const std::pair<Vertex, uint32_t>& c, Vertex x) { return c.first < x; });
  if (it == counts.end() || it->first != v || walks == 0) return 0.0;
  return static_cast<double>(it->second) / walks;
}

EndpointDistribution EmpiricalEndpointDistribution(
    QueryAccess& g, Vertex source, int64_t t, uint64_t R, uint64_t seed,
    uint64_t tag, uint64_t source_index, uint64_t batch) {
  std::unordered_map<Vertex, uint32_t> hits;
  for (uint64_t w = 0; w < R; ++w) {
    Rng rng(seed, {tag, source_index, batch, w});
    ++hits[LazyWalk(g, source, t, rng)];
  }
  EndpointDistribution dist;
  dist.source = source;
  dist.walks = R;
  dist.counts.assign(hits.begin(), hits.end());
  std::sort(dist.counts.begin(), dist.counts.end());
  return dist;
}

absl::StatusOr<NormTestResult> L2NormTest(QueryAccess& g, Vertex source,
                                          double sigma, uint64_t R, int64_t t,
                                          double delta, uint64_t seed,
                                          uint64_t source_index) {
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError("delta must lie in (0, 1)");
  }
  if (!(sigma > 0.0)) return absl::InvalidArgumentError("sigma must be positive");
  const double required =
      16.0 * std::sqrt(static_cast<double>(g.volume())) / delta;
  // Relative slack absorbs rounding when R was derived from the same bound.
  if (static_cast<double>(R) < required * (1.0 - 1e-12)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "R=", R, " below the required 16 sqrt(vol) / delta = ", required));
  }
  EndpointDistribution first = EmpiricalEndpointDistribution(
      g, source, t, R, seed, kTagNormWalk, source_index, 0);
  EndpointDistribution second = EmpiricalEndpointDistribution(
      g, source, t, R, seed, kTagNormWalk, source_index, 1);
  DegreeCache deg(g);
  NormTestResult result;
  result.statistic = WeightedOverlap(first, second, deg) /
                     (static_cast<double>(R) * static_cast<double>(R));
  result.accept = result.statistic <= sigma / 2.0;
  return result;
}

Eigen::MatrixXd EstimateGram(QueryAccess& g, std::span<const Vertex> sources,
                             int64_t t, uint64_t R, uint64_t seed,
                             GramDiagonal diagonal) {
  const size_t s = sources.size();
  std::vector<EndpointDistribution> dists;
  dists.reserve(s);
  for (size_t j = 0; j < s; ++j) {
    dists.push_back(EmpiricalEndpointDistribution(g, sources[j], t, R, seed,
                                                  kTagGramWalk, j, 0));
  }
  DegreeCache deg(g);
  const double r = static_cast<double>(R);
  Eigen::MatrixXd gram(s, s);
  for (size_t a = 0; a < s; ++a) {
    for (size_t b = a + 1; b < s; ++b) {
      gram(a, b) = gram(b, a) = WeightedOverlap(dists[a], dists[b], deg) / (r * r);
    }
    if (diagonal == GramDiagonal::kPlugIn || R < 2) {
      gram(a, a) = WeightedOverlap(dists[a], dists[a], deg) / (r * r);
    } else {
      double sum = 0.0;
      for (const auto& [v, c] : dists[a].counts) {
        sum += static_cast<double>(c) * (c - 1.0) / deg.Get(v);
      }
      gram(a, a) = sum / (r * (r - 1.0));
    }
  }
  return gram;
}

}  // namespace clustertest
