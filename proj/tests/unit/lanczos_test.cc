#include "moco/lanczos.h"

#include <cmath>

#include <gtest/gtest.h>

#include "generators.h"

namespace moco {
namespace {

using testing::Gen;

SymmetricApply Dense(const Matrix& a) {
  return [a](const Vector& in, Vector& out) { out = a * in; };
}

TEST(MinEigLanczos, Diagonal) {
  Vector d(3);
  d << 3.0, 1.0, -2.0;
  Matrix a = d.asDiagonal();
  EigenPair p = MinEigLanczos(Dense(a), 3);
  EXPECT_NEAR(p.value, -2.0, 1e-12);
  EXPECT_NEAR(std::abs(p.vector[2]), 1.0, 1e-10);
}

TEST(MinEigLanczos, Identity) {
  EigenPair p = MinEigLanczos(Dense(Matrix::Identity(6, 6)), 6);
  EXPECT_NEAR(p.value, 1.0, 1e-12);
  EXPECT_NEAR(p.vector.norm(), 1.0, 1e-12);
}

TEST(MinEigLanczos, RandomSymmetricMatchesDense) {
  Gen gen(31);
  for (int t = 0; t < 20; ++t) {
    Matrix a = gen.Symmetric(50);
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    double norm = es.eigenvalues().cwiseAbs().maxCoeff();
    LanczosConfig cfg;
    cfg.seed = 100 + t;
    EigenPair p = MinEigLanczos(Dense(a), 50, cfg);
    EXPECT_NEAR(p.value, es.eigenvalues()[0], 1e-6 * norm);
    EXPECT_LE((a * p.vector - p.value * p.vector).norm(), 1e-6 * norm);
    EXPECT_NEAR(p.vector.norm(), 1.0, 1e-12);
  }
}

TEST(MinEigLanczos, LargerOperatorWithRestarts) {
  Gen gen(32);
  const int n = 400;
  Matrix a = gen.Symmetric(n);
  Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
  LanczosConfig cfg;
  cfg.max_iters = 40;  // forces restarts
  EigenPair p = MinEigLanczos(Dense(a), n, cfg);
  double norm = es.eigenvalues().cwiseAbs().maxCoeff();
  EXPECT_NEAR(p.value, es.eigenvalues()[0], 1e-6 * norm);
}

TEST(MinEigLanczos, DeterministicForFixedSeed) {
  Gen gen(33);
  Matrix a = gen.Symmetric(30);
  EigenPair p1 = MinEigLanczos(Dense(a), 30);
  EigenPair p2 = MinEigLanczos(Dense(a), 30);
  EXPECT_EQ(p1.value, p2.value);
  EXPECT_EQ(p1.vector, p2.vector);
}

TEST(MinEigLanczos, ZeroOperator) {
  EigenPair p = MinEigLanczos(Dense(Matrix::Zero(5, 5)), 5);
  EXPECT_EQ(p.value, 0.0);
  EXPECT_NEAR(p.vector.norm(), 1.0, 1e-12);
}

TEST(MinEigLanczos, OneByOne) {
  Matrix a(1, 1);
  a << -4.0;
  EigenPair p = MinEigLanczos(Dense(a), 1);
  EXPECT_DOUBLE_EQ(p.value, -4.0);
}

TEST(BottomEigsLanczos, MatchesDenseSpectrum) {
  Gen gen(34);
  Matrix a = gen.Symmetric(40);
  Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
  std::vector<EigenPair> pairs = BottomEigsLanczos(Dense(a), 40, 3);
  ASSERT_EQ(pairs.size(), 3u);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(pairs[i].value, es.eigenvalues()[i], 1e-6);
  EXPECT_LE(pairs[0].value, pairs[1].value);
  EXPECT_LE(pairs[1].value, pairs[2].value);
}

}  // namespace
}  // namespace moco
