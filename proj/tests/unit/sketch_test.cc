#include "moco/sketch.h"

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "generators.h"

namespace moco {
namespace {

using testing::Gen;

double Nuclear(const Matrix& sym) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (sym + sym.transpose()),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

TEST(MakeSketch, StartsEmptyAndIsSeeded) {
  SketchState a = MakeSketch(10, 3, 5);
  SketchState b = MakeSketch(10, 3, 5);
  SketchState c = MakeSketch(10, 3, 6);
  EXPECT_TRUE(a.s.isZero(0.0));
  EXPECT_EQ(a.omega, b.omega);
  EXPECT_NE(a.omega, c.omega);
  EXPECT_EQ(a.side(), 10);
  EXPECT_EQ(a.width(), 3);
}

TEST(SketchUpdate, IdentityUpdate) {
  Gen gen(51);
  SketchState sk = MakeSketch(6, 3, 1);
  sk.s = gen.NormalMatrix(6, 3);
  Matrix before = sk.s;
  SketchUpdate(sk, 1.0, 0.0, gen.UnitVector(6));
  EXPECT_EQ(sk.s, before);
}

TEST(SketchUpdate, RankOneFromZero) {
  SketchState sk = MakeSketch(6, 3, 2);
  SketchUpdate(sk, 0.0, 1.0, Vector::Unit(6, 0));
  EXPECT_EQ(sk.s.row(0), sk.omega.row(0));
  EXPECT_TRUE(sk.s.bottomRows(5).isZero(0.0));
}

TEST(SketchUpdate, TracksDenseIterate) {
  Gen gen(52);
  const int n = 20;
  SketchState sk = MakeSketch(n, 4, 3);
  Matrix x = Matrix::Zero(n, n);
  for (int t = 0; t < 100; ++t) {
    double eta = gen.Uniform(0.0, 2.0);
    double theta = gen.Uniform(0.0, 1.0);
    Vector q = gen.UnitVector(n);
    SketchUpdate(sk, eta, theta, q);
    x = eta * x + theta * q * q.transpose();
    if (gen.Coin(0.2)) {
      Matrix u = gen.NormalMatrix(n, 2);
      double scale = gen.Uniform(0.0, 1.5);
      SketchAddFactor(sk, scale, u);
      x = scale * x + u * u.transpose();
    }
    EXPECT_LE((sk.s - x * sk.omega).norm(), 1e-10 * (1.0 + (x * sk.omega).norm()));
  }
}

TEST(SketchReconstruct, RankOneIsExact) {
  Gen gen(53);
  const int n = 30;
  Vector q = gen.NormalVector(n);
  Matrix x = q * q.transpose();
  SketchState sk = MakeSketch(n, 3, 4);
  sk.s = x * sk.omega;
  LowRankFactor f = SketchReconstruct(sk, 1);
  EXPECT_LE(Nuclear(f.Dense() - x), 1e-6 * Nuclear(x));
  EXPECT_GE(f.values.minCoeff(), 0.0);
}

TEST(SketchReconstruct, ZeroSketch) {
  SketchState sk = MakeSketch(8, 3, 1);
  LowRankFactor f = SketchReconstruct(sk, 1);
  EXPECT_TRUE(f.Dense().isZero(0.0));
}

TEST(SketchReconstruct, RankMustLeaveOversampling) {
  SketchState sk = MakeSketch(8, 3, 1);
  try {
    SketchReconstruct(sk, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRankTooLarge);
  }
}

TEST(SketchReconstruct, ExpectationBoundOnRankFive) {
  // E ||X - X_hat||_* <= (1 + r / (R - r - 1)) sum_{i > r} sigma_i(X).
  Gen gen(54);
  const int n = 60, r = 2, width = 8, trials = 200;
  Matrix x = gen.PsdOfRank(n, 5);
  Eigen::SelfAdjointEigenSolver<Matrix> es(x, Eigen::EigenvaluesOnly);
  Vector sig = es.eigenvalues().reverse();
  double tail = sig.tail(n - r).sum();
  double total = 0.0;
  for (int t = 0; t < trials; ++t) {
    SketchState sk = MakeSketch(n, width, 1000 + t);
    sk.s = x * sk.omega;
    total += Nuclear(SketchReconstruct(sk, r).Dense() - x);
  }
  double bound = (1.0 + static_cast<double>(r) / (width - r - 1)) * tail;
  EXPECT_LE(total / trials, 1.1 * bound);
}

TEST(FrobeniusDistance, MatchesDense) {
  Gen gen(55);
  LowRankFactor f;
  Eigen::HouseholderQR<Matrix> qr(gen.NormalMatrix(12, 2));
  f.u = qr.householderQ() * Matrix::Identity(12, 2);
  f.values = gen.NormalVector(2).cwiseAbs();
  Matrix v = gen.NormalMatrix(12, 3);
  EXPECT_NEAR(FrobeniusDistance(f, v), (f.Dense() - v * v.transpose()).norm(), 1e-10);
}

TEST(FactorIo, RoundTripAndLayout) {
  Gen gen(56);
  LowRankFactor f;
  f.u = gen.NormalMatrix(5, 2);
  f.values = gen.NormalVector(2).cwiseAbs();
  std::stringstream ss;
  WriteFactor(ss, f);
  const std::string bytes = ss.str();
  ASSERT_EQ(bytes.size(), 16u + 8u * (10u + 2u));
  EXPECT_EQ(static_cast<unsigned char>(bytes[0]), 5);
  EXPECT_EQ(static_cast<unsigned char>(bytes[8]), 2);
  LowRankFactor g = ReadFactor(ss);
  EXPECT_EQ(f.u, g.u);
  EXPECT_EQ(f.values, g.values);
}

TEST(FactorIo, TruncatedInputThrows) {
  std::stringstream ss(std::string("\x05\0\0\0\0\0\0\0", 8));
  EXPECT_THROW(ReadFactor(ss), Error);
}

}  // namespace
}  // namespace moco
