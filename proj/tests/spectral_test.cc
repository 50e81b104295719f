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

#include <cmath>
#include <vector>

#include "clustertest/generators.h"
#include "clustertest/random.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace clustertest {
namespace {

Eigen::MatrixXd RandomSymmetric(int n, uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) m(i, j) = m(j, i) = 2 * rng.UniformDouble() - 1;
  }
  return m;
}

TEST(JacobiTest, MatchesSturmBisection) {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 1 + seed % 12;
    Eigen::MatrixXd m = RandomSymmetric(n, seed);
    auto jac = JacobiEigenvalues(m);
    ASSERT_TRUE(jac.ok());
    std::vector<double> ref = testing::SturmEigenvalues(m);
    ASSERT_EQ(jac->size(), ref.size());
    for (int i = 0; i < n; ++i) EXPECT_NEAR((*jac)[i], ref[i], 1e-9);
  }
}

TEST(JacobiTest, MatchesEigenAboveAutoLimit) {
  Eigen::MatrixXd m = RandomSymmetric(120, 5);
  auto jac = SymmetricEigenvalues(m, EigenBackend::kJacobi);
  auto lib = SymmetricEigenvalues(m, EigenBackend::kTridiagonalQR);
  auto aut = SymmetricEigenvalues(m, EigenBackend::kAuto);
  ASSERT_TRUE(jac.ok() && lib.ok() && aut.ok());
  for (int i = 0; i < 120; ++i) {
    EXPECT_NEAR((*jac)[i], (*lib)[i], 1e-9);
    EXPECT_EQ((*aut)[i], (*lib)[i]);
  }
}

TEST(JacobiTest, DescendingAndDiagonalExact) {
  Eigen::MatrixXd m = Eigen::Vector3d(1.0, 3.0, 2.0).asDiagonal();
  auto ev = JacobiEigenvalues(m);
  ASSERT_TRUE(ev.ok());
  EXPECT_EQ(*ev, (std::vector<double>{3.0, 2.0, 1.0}));
}

TEST(JacobiTest, RejectsAsymmetricInput) {
  Eigen::MatrixXd m(2, 2);
  m << 1, 2, 3, 4;
  EXPECT_FALSE(JacobiEigenvalues(m).ok());
  EXPECT_FALSE(SymmetricEigenvalues(m).ok());
}

TEST(KthLargestTest, IndexesFromOne) {
  Eigen::MatrixXd m = Eigen::Vector4d(4, 1, 3, 2).asDiagonal();
  EXPECT_EQ(*KthLargestEigenvalue(m, 1), 4.0);
  EXPECT_EQ(*KthLargestEigenvalue(m, 3), 2.0);
  EXPECT_FALSE(KthLargestEigenvalue(m, 0).ok());
  EXPECT_FALSE(KthLargestEigenvalue(m, 5).ok());
}

TEST(LaplacianTest, ZeroMultiplicityCountsComponents) {
  auto inst = GenerateClusterable(3, 40, 6, 2);
  ASSERT_TRUE(inst.ok());
  auto spec = LaplacianSpectrum(inst->graph, 5);
  ASSERT_TRUE(spec.ok());
  ASSERT_EQ(spec->size(), 5u);
  EXPECT_NEAR((*spec)[0], 0.0, 1e-9);
  EXPECT_NEAR((*spec)[2], 0.0, 1e-9);
  EXPECT_GT((*spec)[3], 0.05);
  for (size_t i = 1; i < spec->size(); ++i) EXPECT_LE((*spec)[i - 1], (*spec)[i]);
}

TEST(LaplacianTest, BipartiteCycleReachesTwo) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v < 8; ++v) edges.push_back({v, (v + 1) % 8});
  auto g = Graph::FromEdges(8, edges);
  auto spec = LaplacianSpectrum(*g);
  ASSERT_TRUE(spec.ok());
  EXPECT_NEAR(spec->back(), 2.0, 1e-12);
  // Cycle C_8: eigenvalues 1 - cos(2 pi j / 8).
  EXPECT_NEAR((*spec)[1], 1 - std::cos(2 * M_PI / 8), 1e-12);
}

TEST(LaplacianTest, RejectsIsolatedVertex) {
  auto g = Graph::FromEdges(3, {{0, 1}});
  EXPECT_FALSE(NormalizedLaplacian(*g).ok());
}

TEST(LazyWalkTest, StationaryDistributionIsFixed) {
  auto g = GenerateConfigurationModel(50, 4, 3);
  Eigen::VectorXd pi(50);
  for (Vertex v = 0; v < 50; ++v) pi(v) = g->degree(v) / double(g->volume());
  Eigen::VectorXd next = ApplyLazyWalk(*g, pi);
  EXPECT_LT((next - pi).norm(), 1e-14);
  Eigen::VectorXd e = Eigen::VectorXd::Unit(50, 7);
  EXPECT_NEAR(ApplyLazyWalk(*g, e).sum(), 1.0, 1e-14);
}

TEST(WalkColumnsTest, MatchDenseMatrixPowers) {
  auto g = Graph::FromEdges(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 4}});
  std::vector<Vertex> sources = {0, 4, 4};
  auto cols = ExactWalkColumns(*g, sources, 7);
  ASSERT_TRUE(cols.ok());
  for (size_t j = 0; j < sources.size(); ++j) {
    std::vector<double> p = testing::DenseWalkDistribution(*g, sources[j], 7);
    for (Vertex v = 0; v < 5; ++v) {
      EXPECT_NEAR(cols->columns(v, j), p[v] / std::sqrt(g->degree(v)), 1e-14);
    }
  }
  Eigen::MatrixXd gram = Gram(*cols);
  EXPECT_NEAR(gram(0, 1), testing::DenseGramEntry(*g, 0, 4, 7), 1e-14);
}

TEST(WalkKernelTest, DenseAndSparseRoutesAgree) {
  auto inst = GenerateUnclusterable(1, 60, 6, 0.05, 9);
  ASSERT_TRUE(inst.ok()) << inst.status();
  const Graph& g = inst->graph;
  std::vector<Vertex> sources = {0, 3, 3, 61, 100, 119};
  for (int64_t t : {0, 1, 5, 40}) {
    auto dense = WalkKernel::Create(g, t, WalkKernel::Method::kDense);
    auto sparse = WalkKernel::Create(g, t, WalkKernel::Method::kSparse);
    ASSERT_TRUE(dense.ok() && sparse.ok());
    EXPECT_TRUE(dense->dense());
    EXPECT_FALSE(sparse->dense());
    Eigen::MatrixXd a = dense->GramOf(sources), b = sparse->GramOf(sources);
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-12) << "t=" << t;
    // Repeated sources give identical rows.
    EXPECT_LT((a.row(1) - a.row(2)).norm(), 1e-15);
  }
}

TEST(WalkKernelTest, KernelAtZeroStepsIsInverseDegree) {
  auto g = Graph::FromEdges(3, {{0, 1}, {1, 2}, {2, 2}});
  auto k = WalkKernel::Create(*g, 0);
  std::vector<Vertex> s = {0, 1, 2};
  Eigen::MatrixXd m = k->GramOf(s);
  EXPECT_NEAR(m(0, 0), 1.0, 1e-14);
  EXPECT_NEAR(m(1, 1), 0.5, 1e-14);
  EXPECT_NEAR(m(0, 1), 0.0, 1e-14);
}

}  // namespace
}  // namespace clustertest
