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

#ifndef CLUSTERTEST_SPECTRAL_H_
#define CLUSTERTEST_SPECTRAL_H_

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "absl/status/statusor.h"
#include "clustertest/graph.h"

namespace clustertest {

enum class EigenBackend {
  kAuto,    // Jacobi up to kJacobiAutoLimit, tridiagonal QR above.
  kJacobi,
  kTridiagonalQR,
};

inline constexpr int kJacobiAutoLimit = 96;
inline constexpr size_t kLaplacianSpectrumLimit = 5000;
inline constexpr size_t kDenseKernelLimit = 3000;

// Cyclic Jacobi rotations until the off-diagonal Frobenius norm is at most
// tol * ||m||_F. Eigenvalues in descending order.
absl::StatusOr<std::vector<double>> JacobiEigenvalues(const Eigen::MatrixXd& m,
                                                      double tol = 1e-12,
                                                      int max_sweeps = 100);

// Descending eigenvalues of a symmetric matrix.
absl::StatusOr<std::vector<double>> SymmetricEigenvalues(
    const Eigen::MatrixXd& m, EigenBackend backend = EigenBackend::kAuto);

// 1-based k. Requires 1 <= k <= dim.
absl::StatusOr<double> KthLargestEigenvalue(
    const Eigen::MatrixXd& m, int k, EigenBackend backend = EigenBackend::kAuto);

// L = I - D^{-1/2} A D^{-1/2}. Requires min degree >= 1.
absl::StatusOr<Eigen::MatrixXd> NormalizedLaplacian(const Graph& g);

// Smallest `count` eigenvalues of L ascending, clamped to [0, 2]. count == 0
// returns all n.
absl::StatusOr<std::vector<double>> LaplacianSpectrum(const Graph& g,
                                                      size_t count = 0);

// y = M x with M = (I + A D^{-1}) / 2.
Eigen::VectorXd ApplyLazyWalk(const Graph& g, const Eigen::VectorXd& x);

struct WalkColumns {
  std::vector<Vertex> sources;
  int64_t t = 0;
  // n x |sources|; column j is D^{-1/2} M^t 1_{sources[j]}.
  Eigen::MatrixXd columns;
};

// t repeated sparse applications of M per source.
absl::StatusOr<WalkColumns> ExactWalkColumns(const Graph& g,
                                             std::span<const Vertex> sources,
                                             int64_t t);

// columns^T columns.
Eigen::MatrixXd Gram(const WalkColumns& cols);

// Exact t-step Gram kernel K(a, b) = <D^{-1/2} M^t 1_a, D^{-1/2} M^t 1_b>.
// Dense graphs (n <= kDenseKernelLimit) use one eigendecomposition of
// D^{-1/2} M D^{-1/2}, so K = D^{-1/2} V diag(lambda^{2t}) V^T D^{-1/2}.
// Larger graphs fall back to sparse powering per requested source.
class WalkKernel {
 public:
  enum class Method { kAuto, kDense, kSparse };

  static absl::StatusOr<WalkKernel> Create(const Graph& g, int64_t t,
                                           Method method = Method::kAuto);

  int64_t t() const { return t_; }
  bool dense() const { return dense_; }

  // Gram of the given sources (repeats allowed). Thread-safe.
  Eigen::MatrixXd GramOf(std::span<const Vertex> sources) const;

 private:
  const Graph* g_ = nullptr;
  int64_t t_ = 0;
  bool dense_ = false;
  Eigen::MatrixXd kernel_;
};

}  // namespace clustertest

#endif  // CLUSTERTEST_SPECTRAL_H_
