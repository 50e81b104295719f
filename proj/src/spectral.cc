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

#include "clustertest/spectral.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Eigenvalues>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace clustertest {
namespace {

absl::Status CheckSymmetric(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) {
    return absl::InvalidArgumentError("matrix is not square");
  }
  if (!m.allFinite()) return absl::InvalidArgumentError("matrix has non-finite entries");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (m.size() > 0 && asym > 1e-10 * scale) {
    return absl::InvalidArgumentError(
        absl::StrCat("matrix asymmetry ", asym, " exceeds tolerance"));
  }
  return absl::OkStatus();
}

absl::Status CheckDegrees(const Graph& g) {
  if (g.num_vertices() > 0 && g.min_degree() == 0) {
    return absl::FailedPreconditionError("graph has a vertex of degree 0");
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<std::vector<double>> JacobiEigenvalues(const Eigen::MatrixXd& m,
                                                      double tol,
                                                      int max_sweeps) {
  if (absl::Status s = CheckSymmetric(m); !s.ok()) return s;
  const int n = static_cast<int>(m.rows());
  Eigen::MatrixXd a = (m + m.transpose()) / 2.0;
  const double target = tol * a.norm();
  auto off_norm = [&] {
    double sum = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) sum += 2.0 * a(p, q) * a(p, q);
    return std::sqrt(sum);
  };
  int sweep = 0;
  for (; sweep < max_sweeps && off_norm() > target; ++sweep) {
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p), arq = a(r, q);
          a(r, p) = a(p, r) = c * arp - s * arq;
          a(r, q) = a(q, r) = c * arq + s * arp;
        }
        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = 0.0;
      }
    }
  }
  if (off_norm() > target) {
    return absl::InternalError(
        absl::StrCat("Jacobi did not converge in ", max_sweeps, " sweeps"));
  }
  std::vector<double> eig(n);
  for (int i = 0; i < n; ++i) eig[i] = a(i, i);
  std::sort(eig.begin(), eig.end(), std::greater<>());
  return eig;
}

absl::StatusOr<std::vector<double>> SymmetricEigenvalues(
    const Eigen::MatrixXd& m, EigenBackend backend) {
  if (backend == EigenBackend::kAuto) {
    backend = m.rows() <= kJacobiAutoLimit ? EigenBackend::kJacobi
                                           : EigenBackend::kTridiagonalQR;
  }
  if (backend == EigenBackend::kJacobi) return JacobiEigenvalues(m);
  if (absl::Status s = CheckSymmetric(m); !s.ok()) return s;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    return absl::InternalError("tridiagonal QR failed to converge");
  }
  std::vector<double> eig(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + m.rows());
  std::sort(eig.begin(), eig.end(), std::greater<>());
  return eig;
}

absl::StatusOr<double> KthLargestEigenvalue(const Eigen::MatrixXd& m, int k,
                                            EigenBackend backend) {
  if (k < 1 || k > m.rows()) {
    return absl::InvalidArgumentError(
        absl::StrCat("k=", k, " outside [1, ", m.rows(), "]"));
  }
  absl::StatusOr<std::vector<double>> eig = SymmetricEigenvalues(m, backend);
  if (!eig.ok()) return eig.status();
  return (*eig)[k - 1];
}

absl::StatusOr<Eigen::MatrixXd> NormalizedLaplacian(const Graph& g) {
  if (absl::Status s = CheckDegrees(g); !s.ok()) return s;
  const size_t n = g.num_vertices();
  Eigen::MatrixXd l = Eigen::MatrixXd::Identity(n, n);
  for (Vertex v = 0; v < n; ++v) {
    const double dv = g.degree(v);
    for (Vertex u : g.neighbors(v)) {
      l(u, v) -= 1.0 / std::sqrt(dv * g.degree(u));
    }
  }
  return l;
}

absl::StatusOr<std::vector<double>> LaplacianSpectrum(const Graph& g,
                                                      size_t count) {
  const size_t n = g.num_vertices();
  if (n > kLaplacianSpectrumLimit) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "dense spectrum limited to n <= ", kLaplacianSpectrumLimit));
  }
  absl::StatusOr<Eigen::MatrixXd> l = NormalizedLaplacian(g);
  if (!l.ok()) return l.status();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(*l,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    return absl::InternalError("tridiagonal QR failed to converge");
  }
  std::vector<double> eig(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + n);
  std::sort(eig.begin(), eig.end());
  for (double& x : eig) x = std::clamp(x, 0.0, 2.0);
  if (count > 0 && count < n) eig.resize(count);
  return eig;
}

Eigen::VectorXd ApplyLazyWalk(const Graph& g, const Eigen::VectorXd& x) {
  Eigen::VectorXd y = 0.5 * x;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (x[v] == 0.0) continue;
    const double w = 0.5 * x[v] / g.degree(v);
    for (Vertex u : g.neighbors(v)) y[u] += w;
  }
  return y;
}

absl::StatusOr<WalkColumns> ExactWalkColumns(const Graph& g,
                                             std::span<const Vertex> sources,
                                             int64_t t) {
  if (t < 0) return absl::InvalidArgumentError("t must be non-negative");
  if (absl::Status s = CheckDegrees(g); !s.ok()) return s;
  const size_t n = g.num_vertices();
  WalkColumns out;
  out.sources.assign(sources.begin(), sources.end());
  out.t = t;
  out.columns.resize(n, sources.size());
  Eigen::VectorXd inv_sqrt_deg(n);
  for (Vertex v = 0; v < n; ++v) inv_sqrt_deg[v] = 1.0 / std::sqrt(g.degree(v));
  for (size_t j = 0; j < sources.size(); ++j) {
    if (sources[j] >= n) {
      return absl::InvalidArgumentError(
          absl::StrCat("source ", sources[j], " out of range"));
    }
    Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
    p[sources[j]] = 1.0;
    for (int64_t step = 0; step < t; ++step) p = ApplyLazyWalk(g, p);
    out.columns.col(j) = p.cwiseProduct(inv_sqrt_deg);
  }
  return out;
}

Eigen::MatrixXd Gram(const WalkColumns& cols) {
  return cols.columns.transpose() * cols.columns;
}

absl::StatusOr<WalkKernel> WalkKernel::Create(const Graph& g, int64_t t,
                                              Method method) {
  if (t < 0) return absl::InvalidArgumentError("t must be non-negative");
  if (absl::Status s = CheckDegrees(g); !s.ok()) return s;
  const size_t n = g.num_vertices();
  WalkKernel k;
  k.g_ = &g;
  k.t_ = t;
  k.dense_ = method == Method::kDense ||
             (method == Method::kAuto && n <= kDenseKernelLimit);
  if (!k.dense_) return k;

  Eigen::VectorXd inv_sqrt_deg(n);
  for (Vertex v = 0; v < n; ++v) inv_sqrt_deg[v] = 1.0 / std::sqrt(g.degree(v));
  // Symmetric lazy walk (I + D^{-1/2} A D^{-1/2}) / 2.
  Eigen::MatrixXd sym = 0.5 * Eigen::MatrixXd::Identity(n, n);
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex u : g.neighbors(v)) {
      sym(u, v) += 0.5 * inv_sqrt_deg[u] * inv_sqrt_deg[v];
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success) {
    return absl::InternalError("kernel eigendecomposition failed");
  }
  Eigen::VectorXd power(n);
  for (size_t i = 0; i < n; ++i) {
    const double lambda = std::clamp(solver.eigenvalues()[i], 0.0, 1.0);
    power[i] = std::pow(lambda, 2.0 * static_cast<double>(t));
  }
  Eigen::MatrixXd scaled = inv_sqrt_deg.asDiagonal() * solver.eigenvectors();
  k.kernel_ = scaled * power.asDiagonal() * scaled.transpose();
  return k;
}

Eigen::MatrixXd WalkKernel::GramOf(std::span<const Vertex> sources) const {
  const size_t s = sources.size();
  Eigen::MatrixXd gram(s, s);
  if (dense_) {
    for (size_t a = 0; a < s; ++a)
      for (size_t b = 0; b < s; ++b) gram(a, b) = kernel_(sources[a], sources[b]);
    return gram;
  }
  // Sparse route cannot fail here: degrees and t were validated in Create.
  WalkColumns cols = *ExactWalkColumns(*g_, sources, t_);
  return Gram(cols);
}

}  // namespace clustertest
