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

#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "clustertest/random.h"

namespace clustertest::testing {
namespace {

// Number of eigenvalues of the tridiagonal (a, b) strictly below x.
int SturmCount(const std::vector<double>& a, const std::vector<double>& b,
               double x) {
  int count = 0;
  double q = 1.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double off = i == 0 ? 0.0 : b[i - 1] * b[i - 1];
    q = a[i] - x - (i == 0 ? 0.0 : off / q);
    if (q == 0.0) q = -std::numeric_limits<double>::epsilon() * (std::abs(x) + 1.0);
    if (q < 0.0) ++count;
  }
  return count;
}

}  // namespace

std::vector<double> SturmEigenvalues(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  if (n == 0) return {};
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = m(i, j);
  }
  // Householder: zero column k below the subdiagonal.
  for (int k = 0; k + 2 < n; ++k) {
    double alpha = 0.0;
    for (int i = k + 1; i < n; ++i) alpha += a[i][k] * a[i][k];
    alpha = std::sqrt(alpha);
    if (alpha == 0.0) continue;
    if (a[k + 1][k] > 0) alpha = -alpha;
    std::vector<double> v(n, 0.0);
    v[k + 1] = a[k + 1][k] - alpha;
    for (int i = k + 2; i < n; ++i) v[i] = a[i][k];
    double vnorm2 = 0.0;
    for (int i = k + 1; i < n; ++i) vnorm2 += v[i] * v[i];
    if (vnorm2 == 0.0) continue;
    // A <- H A H with H = I - 2 v v^T / |v|^2.
    std::vector<double> p(n, 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) p[i] += a[i][j] * v[j];
      p[i] *= 2.0 / vnorm2;
    }
    double vp = 0.0;
    for (int i = k + 1; i < n; ++i) vp += v[i] * p[i];
    const double kfac = vp / vnorm2;
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = p[i] - kfac * v[i];
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) a[i][j] -= v[i] * w[j] + w[i] * v[j];
    }
  }
  std::vector<double> diag(n), off(std::max(0, n - 1));
  double bound = 0.0;
  for (int i = 0; i < n; ++i) {
    diag[i] = a[i][i];
    if (i + 1 < n) off[i] = a[i + 1][i];
  }
  for (int i = 0; i < n; ++i) {
    double r = std::abs(diag[i]);
    if (i > 0) r += std::abs(off[i - 1]);
    if (i + 1 < n) r += std::abs(off[i]);
    bound = std::max(bound, r);
  }
  std::vector<double> out(n);
  for (int idx = 0; idx < n; ++idx) {
    // idx-th smallest: smallest x with count(x) > idx.
    double lo = -bound - 1.0, hi = bound + 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + bound); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (SturmCount(diag, off, mid) > idx) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    out[n - 1 - idx] = 0.5 * (lo + hi);
  }
  return out;
}

double EnumeratedInternalConductance(const Graph& g,
                                     const std::vector<Vertex>& cluster) {
  const size_t c = cluster.size();
  std::vector<int> pos(g.num_vertices(), -1);
  for (size_t i = 0; i < c; ++i) pos[cluster[i]] = static_cast<int>(i);
  uint64_t vol_c = 0;
  for (Vertex v : cluster) vol_c += g.degree(v);
  double best = std::numeric_limits<double>::infinity();
  for (uint64_t mask = 1; mask < (uint64_t{1} << c); ++mask) {
    uint64_t vol_s = 0, cut = 0;
    for (size_t i = 0; i < c; ++i) {
      if (!(mask >> i & 1)) continue;
      const Vertex v = cluster[i];
      vol_s += g.degree(v);
      for (Vertex u : g.neighbors(v)) {
        const int j = pos[u];
        if (j >= 0 && !(mask >> j & 1)) ++cut;
      }
    }
    if (vol_s == 0 || 2 * vol_s > vol_c) continue;
    best = std::min(best, static_cast<double>(cut) / vol_s);
  }
  return best;
}

uint64_t LocalSearchMaxCut(const Graph& g, int restarts, uint64_t seed) {
  const size_t n = g.num_vertices();
  Rng rng(seed);
  uint64_t best = 0;
  for (int r = 0; r < restarts; ++r) {
    std::vector<bool> side(n);
    for (size_t v = 0; v < n; ++v) side[v] = rng.Bernoulli(0.5);
    bool improved = true;
    while (improved) {
      improved = false;
      for (size_t v = 0; v < n; ++v) {
        int64_t gain = 0;
        for (Vertex u : g.neighbors(v)) {
          if (u == v) continue;
          gain += side[u] == side[v] ? 1 : -1;
        }
        if (gain > 0) {
          side[v] = !side[v];
          improved = true;
        }
      }
    }
    uint64_t cut = 0;
    for (const Edge& e : g.edges()) cut += side[e.u] != side[e.v];
    best = std::max(best, cut);
  }
  return best;
}

std::vector<double> DenseWalkDistribution(const Graph& g, Vertex a, int64_t t) {
  const size_t n = g.num_vertices();
  // Row-major M: M[x][y] = Pr[step y -> x].
  std::vector<double> m(n * n, 0.0);
  for (size_t y = 0; y < n; ++y) {
    m[y * n + y] += 0.5;
    for (Vertex x : g.neighbors(y)) m[x * n + y] += 0.5 / g.degree(y);
  }
  std::vector<double> p(n, 0.0), next(n);
  p[a] = 1.0;
  for (int64_t step = 0; step < t; ++step) {
    for (size_t x = 0; x < n; ++x) {
      double acc = 0.0;
      for (size_t y = 0; y < n; ++y) acc += m[x * n + y] * p[y];
      next[x] = acc;
    }
    p.swap(next);
  }
  return p;
}

double DenseGramEntry(const Graph& g, Vertex a, Vertex b, int64_t t) {
  const std::vector<double> pa = DenseWalkDistribution(g, a, t);
  const std::vector<double> pb = DenseWalkDistribution(g, b, t);
  double acc = 0.0;
  for (size_t x = 0; x < pa.size(); ++x) acc += pa[x] * pb[x] / g.degree(x);
  return acc;
}

FormulaSheet PaperFormulaSheet(double vol, int k, double phi_in,
                               double phi_out, double beta) {
  const double eta = 0.5;
  const double K = k + 1.0;
  FormulaSheet f;
  f.s = 1600.0 * K * K * std::log(12.0 * K) * std::log(vol) / (beta * (1.0 - eta));
  f.c = 20.0 / (phi_in * phi_in);
  f.t = f.c * std::log(vol);
  f.sigma = 192.0 * f.s * k * (1.0 + eta) / vol;
  const double lead = 8.0 * K * std::log(12.0 * K) / (beta * (1.0 - eta));
  const double decay = std::pow(vol, -1.0 - 120.0 * f.c * phi_out);
  f.mu_thres = 0.5 * lead * decay;
  f.mu_err = (1.0 / 3.0) * lead * decay;
  const double first = 100.0 * f.s * f.s * std::sqrt(f.sigma) / f.mu_err;
  const double second =
      200.0 * std::pow(f.s, 4) * std::pow(f.sigma, 1.5) / (f.mu_err * f.mu_err);
  f.R = first > second ? first : second;
  f.r = 192.0 * f.s * std::sqrt(vol);
  return f;
}

}  // namespace clustertest::testing
