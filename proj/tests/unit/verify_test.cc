#include "moco/verify.h"

#include <cmath>

#include <gtest/gtest.h>

#include "generators.h"
#include "moco/problems.h"
#include "moco/solver.h"

namespace moco::verify {
namespace {

using moco::testing::Gen;

TEST(FdGradientCheck, HalfSquaredNorm) {
  Gen gen(91);
  auto f = [](const Vector& x) { return 0.5 * x.squaredNorm(); };
  auto g = [](const Vector& x) -> Vector { return x; };
  EXPECT_LE(FdGradientCheck(f, g, gen.NormalVector(10)), 1e-7);
  // Random-direction path for d > 50.
  EXPECT_LE(FdGradientCheck(f, g, gen.NormalVector(80)), 1e-7);
}

TEST(FdGradientCheck, ToyObjective) {
  ConicProgram toy = ToyProgram();
  Vector p(2);
  p << 2.0, 3.0;
  EXPECT_LE(FdGradientCheck(toy.objective.value, toy.objective.gradient, p), 1e-6);
}

TEST(FdGradientCheck, DetectsWrongGradient) {
  ConicProgram toy = ToyProgram();
  auto wrong = [&](const Vector& x) -> Vector { return 2.0 * toy.objective.gradient(x); };
  Vector p(2);
  p << 2.0, 3.0;
  EXPECT_NEAR(FdGradientCheck(toy.objective.value, wrong, p), 1.0, 1e-5);
}

TEST(PhiTracker, UpdateIsConvexCombination) {
  PhiTracker t;
  t.Update(1.0, 5.0);
  EXPECT_EQ(t.alpha, 5.0);
  t.Update(0.5, 1.0);
  EXPECT_EQ(t.alpha, 3.0);
}

TEST(PhiLowerBound, StationaryOptimumConverges) {
  // f = 0.5 ||x - c||^2 with c >= 0 started at x0 = c: every iterate is
  // optimal, g_k = 0 and alpha_k = f* for all k.
  Vector c(2);
  c << 1.0, 2.0;
  ConicProgram p = MakeQuadraticProgram(Matrix::Identity(2, 2), c, 0.5 * c.squaredNorm() + 0.7,
                                        Cone::Orthant(2));
  SolverConfig cfg;
  cfg.max_iters = 20;
  cfg.x0 = c;
  PhiTracker tracker;
  double last = -1e9;
  Solve(p, cfg, [&](const IterateState& s, const Vector&) {
    tracker.Update(s.delta, p.objective.value(s.eta * s.x));
    last = PhiLowerBound(tracker, s.g, s.v, c.norm());
  });
  EXPECT_NEAR(last, 0.7, 1e-12);
}

TEST(PhiLowerBound, ToyCertifiedGap) {
  ConicProgram toy = ToyProgram();
  SolverConfig cfg;
  cfg.max_iters = 100;
  Vector start(2);
  start << 1.0, 1.0;
  cfg.x0 = start;
  PhiTracker tracker;
  std::vector<double> lower;
  SolveResult res = Solve(toy, cfg, [&](const IterateState& s, const Vector&) {
    tracker.Update(s.delta, toy.objective.value(s.eta * s.x));
    lower.push_back(PhiLowerBound(tracker, s.g, s.v, 1.0));
  });
  for (size_t k = 0; k < lower.size(); ++k) {
    EXPECT_LE(lower[k], 1e-12) << k;
    if (k + 1 < res.trace.size()) {
      EXPECT_LE(res.trace[k + 1].f_value - lower[k], 4.0 / (k + 2.0)) << k;
    }
  }
}

TEST(SmoothnessGapCheck, IsotropicQuadraticIsTight) {
  const double l = 3.0;
  ConicProgram p = MakeQuadraticProgram(l * Matrix::Identity(4, 4), Vector::Zero(4), 0.0,
                                        Cone::Orthant(4));
  SmoothnessGap gap = SmoothnessGapCheck(p, l, 100, 1);
  EXPECT_NEAR(gap.min_slack, 0.0, 1e-12 * (1.0 + gap.scale));
}

TEST(SmoothnessGapCheck, RandomQuadratics) {
  Gen gen(92);
  for (int t = 0; t < 5; ++t) {
    const int d = gen.Int(2, 8);
    Matrix q = gen.Spd(d, 0.0);
    ConicProgram p = MakeQuadraticProgram(q, gen.NormalVector(d), 0.0, Cone::Orthant(d));
    SmoothnessGap gap = SmoothnessGapCheck(p, moco::testing::MaxEig(q), 1000, t);
    EXPECT_GE(gap.min_slack, -1e-9 * (1.0 + gap.scale));
  }
}

TEST(SmoothnessGapCheck, UnderestimatedLipschitzIsDetected) {
  Matrix q = Matrix::Identity(3, 3) * 4.0;
  ConicProgram p = MakeQuadraticProgram(q, Vector::Zero(3), 0.0, Cone::Orthant(3));
  EXPECT_LT(SmoothnessGapCheck(p, 1.0, 50, 2).min_slack, 0.0);
}

}  // namespace
}  // namespace moco::verify
