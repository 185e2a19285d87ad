#include "moco/cone.h"

#include <cmath>

#include <gtest/gtest.h>

#include "generators.h"

namespace moco {
namespace {

using testing::Gen;

Vector Vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

Vector Flatten(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

TEST(LmoOrthant, DualFeasibleGradientGivesZero) {
  EXPECT_TRUE(LmoOrthant(Vec({1, 2})).isZero(0.0));
}

TEST(LmoOrthant, SingleNegativeEntry) {
  Vector v = LmoOrthant(Vec({1, -1}));
  EXPECT_EQ(v, Vec({0, 1}));
}

TEST(LmoOrthant, NormalizedNegativePart) {
  Vector g = Vec({-3, -4});
  Vector v = LmoOrthant(g);
  EXPECT_NEAR((v - Vec({0.6, 0.8})).norm(), 0.0, 1e-15);
  EXPECT_NEAR(g.dot(v), -5.0, 1e-14);
}

TEST(LmoSecondOrder, DualFeasibleGradientGivesZero) {
  EXPECT_TRUE(LmoSecondOrder(Vec({0, 0, 1})).isZero(0.0));
}

TEST(LmoSecondOrder, NegatedConePoint) {
  EXPECT_NEAR((LmoSecondOrder(Vec({0, 0, -1})) - Vec({0, 0, 1})).norm(), 0.0, 1e-15);
}

TEST(LmoSecondOrder, ClampedBoundarySolution) {
  Vector g = Vec({1, 0, 0});
  Vector v = LmoSecondOrder(g);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR((v - Vec({-r, 0, r})).norm(), 0.0, 1e-15);
  EXPECT_NEAR(g.dot(v), -r, 1e-15);
  Vector brute = BruteLmo(Cone::SecondOrder(3), g, 10000);
  EXPECT_NEAR(g.dot(brute), -r, 1e-3);
}

TEST(LmoPsdDense, DiagonalCase) {
  Matrix g = Vec({1, -2}).asDiagonal();
  PsdLmo lmo = LmoPsdDense(g);
  EXPECT_NEAR(lmo.lambda_min, -2.0, 1e-14);
  EXPECT_NEAR(std::abs(lmo.q[1]), 1.0, 1e-14);
  EXPECT_NEAR((g.array() * lmo.v.array()).sum(), -2.0, 1e-14);
}

TEST(LmoPsdDense, PsdGradientGivesZero) {
  Gen gen(3);
  PsdLmo lmo = LmoPsdDense(gen.PsdOfRank(4, 4));
  EXPECT_TRUE(lmo.v.isZero(0.0));
}

TEST(LmoPsdDense, OffDiagonal2x2) {
  Matrix g(2, 2);
  g << 0, 1, 1, 0;
  PsdLmo lmo = LmoPsdDense(g);
  EXPECT_NEAR(lmo.lambda_min, -1.0, 1e-14);
  const double r = 1.0 / std::sqrt(2.0);
  // Up to sign, q = (1, -1) / sqrt 2.
  EXPECT_NEAR(std::abs(lmo.q[0] * r - lmo.q[1] * r), 1.0, 1e-14);
  EXPECT_NEAR((lmo.v - lmo.q * lmo.q.transpose()).norm(), 0.0, 1e-15);
}

TEST(DualDistance, Examples) {
  EXPECT_DOUBLE_EQ(Cone::Orthant(2).DualDistance(Vec({1, -1})), 1.0);
  Gen gen(4);
  EXPECT_NEAR(Cone::PsdDense(3).DualDistance(Flatten(gen.PsdOfRank(3, 3))), 0.0, 1e-14);
  Matrix g = Vec({1, -0.3}).asDiagonal();
  EXPECT_NEAR(Cone::PsdDense(2).DualDistance(Flatten(g)), 0.3, 1e-14);
}

TEST(DualDistance, SecondOrderMatchesProjectionResidual) {
  Gen gen(5);
  Cone soc = Cone::SecondOrder(4);
  for (int t = 0; t < 100; ++t) {
    Vector g = gen.NormalVector(4);
    Vector p = ProjectSecondOrder(g);
    EXPECT_TRUE(soc.Contains(p));
    // Projection residual is orthogonal to the projection (Moreau).
    EXPECT_NEAR((g - p).dot(p), 0.0, 1e-12);
    EXPECT_NEAR(soc.DualDistance(g), (g - p).norm(), 1e-12);
  }
}

TEST(BruteLmo, OrthantExample) {
  Vector g = Vec({1, -1});
  EXPECT_NEAR(g.dot(BruteLmo(Cone::Orthant(2), g, 10000)), -1.0, 1e-3);
}

TEST(BruteLmo, ZeroGradient) {
  EXPECT_TRUE(BruteLmo(Cone::Orthant(3), Vector::Zero(3), 1000).isZero(0.0));
}

TEST(BruteLmo, RejectsLargeDimension) {
  EXPECT_THROW(BruteLmo(Cone::Orthant(4), Vector::Zero(4), 1000), Error);
}

TEST(ConeMembership, PsdToleranceIsRelativeToNuclearNorm) {
  Cone psd = Cone::PsdDense(2);
  Matrix x = Vec({1.0, -5e-9}).asDiagonal();
  EXPECT_TRUE(psd.Contains(Flatten(x)));
  x(1, 1) = -1e-6;
  EXPECT_FALSE(psd.Contains(Flatten(x)));
}

TEST(ConeMembership, DefaultStartIsInsideEveryCone) {
  for (const Cone& c : {Cone::Orthant(3), Cone::SecondOrder(3), Cone::PsdDense(3),
                        Cone::PsdOperator(3)}) {
    Vector x0 = c.DefaultStart();
    EXPECT_TRUE(c.Contains(x0)) << c.name();
    EXPECT_GT(x0.norm(), 0.0);
  }
}

TEST(PsdOperatorLmo, AgreesWithDenseEigendecomposition) {
  Gen gen(6);
  const int n = 12;
  Cone op = Cone::PsdOperator(n);
  Cone dense = Cone::PsdDense(n);
  for (int t = 0; t < 10; ++t) {
    Vector g = Flatten(gen.Symmetric(n));
    Vector v_op = op.Lmo(g);
    Vector v_dense = dense.Lmo(g);
    EXPECT_NEAR(g.dot(v_op), g.dot(v_dense), 1e-7);
    EXPECT_NEAR(-g.dot(v_op), dense.DualDistance(g), 1e-7);
  }
}

}  // namespace
}  // namespace moco
