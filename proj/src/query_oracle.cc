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

#include "clustertest/query_oracle.h"

#include "absl/status/status.h"

namespace clustertest {

absl::StatusOr<DegreeSampler> DegreeSampler::Create(const Graph& g,
                                                    SamplerOptions options) {
  if (!(options.eta >= 0.0 && options.eta < 1.0)) {
    return absl::InvalidArgumentError("eta must lie in [0, 1)");
  }
  if (!(options.fail_probability >= 0.0 &&
        options.fail_probability <= 1.0 / 3.0)) {
    return absl::InvalidArgumentError("fail probability must lie in [0, 1/3]");
  }
  if (g.volume() == 0) {
    return absl::FailedPreconditionError("graph has zero volume");
  }
  const size_t n = g.num_vertices();
  // Tilt factors 1 +/- h with h = eta / (2 + eta) keep the normalized ratio
  // to deg/vol within [1 - eta, 1 + eta].
  const double h = options.eta / (2.0 + options.eta);
  DegreeSampler s;
  s.fail_probability_ = options.fail_probability;
  s.prob_.resize(n);
  double total = 0.0;
  for (size_t v = 0; v < n; ++v) {
    const double tilt = (v % 2 == 0) ? 1.0 + h : 1.0 - h;
    s.prob_[v] = g.degree(v) * tilt;
    total += s.prob_[v];
  }
  for (double& p : s.prob_) p /= total;

  // Vose's alias method.
  s.alias_prob_.assign(n, 0.0);
  s.alias_.assign(n, 0);
  std::vector<double> scaled(n);
  std::vector<uint32_t> small, large;
  for (size_t v = 0; v < n; ++v) {
    scaled[v] = s.prob_[v] * n;
    (scaled[v] < 1.0 ? small : large).push_back(v);
  }
  while (!small.empty() && !large.empty()) {
    uint32_t lo = small.back();
    small.pop_back();
    uint32_t hi = large.back();
    s.alias_prob_[lo] = scaled[lo];
    s.alias_[lo] = hi;
    scaled[hi] = (scaled[hi] + scaled[lo]) - 1.0;
    if (scaled[hi] < 1.0) {
      large.pop_back();
      small.push_back(hi);
    }
  }
  for (uint32_t v : large) s.alias_prob_[v] = 1.0;
  for (uint32_t v : small) s.alias_prob_[v] = 1.0;
  return s;
}

std::optional<Vertex> DegreeSampler::TrySample(Rng& rng,
                                               QueryLedger& ledger) const {
  ++ledger.vertex_queries;
  ++ledger.degree_queries;
  if (fail_probability_ > 0.0 && rng.Bernoulli(fail_probability_)) {
    return std::nullopt;
  }
  const uint32_t column = static_cast<uint32_t>(rng.UniformInt(prob_.size()));
  return rng.UniformDouble() < alias_prob_[column] ? column : alias_[column];
}

Vertex DegreeSampler::Sample(Rng& rng, QueryLedger& ledger) const {
  for (;;) {
    if (std::optional<Vertex> v = TrySample(rng, ledger)) return *v;
  }
}

}  // namespace clustertest
