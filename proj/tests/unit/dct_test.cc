#include "moco/dct.h"

#include <gtest/gtest.h>

#include "generators.h"

namespace moco {
namespace {

using testing::Gen;

TEST(DctMatrix, IsOrthonormal) {
  for (int n : {1, 2, 7, 16}) {
    Matrix d = DctMatrix(n);
    EXPECT_NEAR((d * d.transpose() - Matrix::Identity(n, n)).norm(), 0.0, 1e-13) << n;
  }
}

TEST(Dct, ForwardAndInverseMatchMatrix) {
  Gen gen(71);
  for (int n : {1, 2, 5, 16, 64}) {
    Dct dct(n);
    Matrix d = DctMatrix(n);
    Vector x = gen.NormalVector(n);
    Vector y, back;
    dct.Forward(x, y);
    EXPECT_NEAR((y - d * x).norm(), 0.0, 1e-12 * (1.0 + x.norm())) << n;
    dct.Inverse(x, back);
    EXPECT_NEAR((back - d.transpose() * x).norm(), 0.0, 1e-12 * (1.0 + x.norm())) << n;
    dct.Inverse(y, back);
    EXPECT_NEAR((back - x).norm(), 0.0, 1e-12 * (1.0 + x.norm())) << n;
  }
}

TEST(Dct, ImpulseGivesFirstColumn) {
  const int n = 8;
  Dct dct(n);
  Vector y;
  dct.Forward(Vector::Unit(n, 0), y);
  EXPECT_NEAR((y - DctMatrix(n).col(0)).norm(), 0.0, 1e-14);
}

TEST(Dct, MoveKeepsPlans) {
  Dct a(4);
  Dct b = std::move(a);
  Vector y;
  b.Forward(Vector::Ones(4), y);
  EXPECT_NEAR(y[0], 2.0, 1e-14);
}

TEST(Dct, RejectsLengthMismatch) {
  Dct dct(4);
  Vector y;
  EXPECT_THROW(dct.Forward(Vector::Ones(5), y), Error);
  EXPECT_THROW(Dct(0), Error);
}

}  // namespace
}  // namespace moco
