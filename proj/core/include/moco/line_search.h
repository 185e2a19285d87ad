#ifndef MOCO_LINE_SEARCH_H_
#define MOCO_LINE_SEARCH_H_

#include <functional>
#include <limits>

#include "moco/conic_program.h"

namespace moco {

// Generic 1D convex restriction on [0, inf): value and derivative.
struct Restriction1D {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

struct Search1DOptions {
  double upper = std::numeric_limits<double>::infinity();
  // Bracket expansion gives up (kLineSearchDivergence) past this point.
  double overflow = 1e100;
  double rel_tol = 1e-12;
  int max_evals = 200;
};

struct Search1DResult {
  double t = 0.0;
  int evals = 0;
};

// argmin over t in [0, upper] of a convex phi. Brackets the minimizer by
// doubling from [0, 1], then refines with safeguarded secant steps on
// phi' (falling back to bisection).
Search1DResult Minimize1D(const Restriction1D& phi, const Search1DOptions& opts = {});

// argmin over t in [0, upper] of a*t^2 + b*t + c. Throws
// kLineSearchDivergence when the quadratic is unbounded below on the range.
double MinimizeQuadratic1D(const Quadratic1D& q,
                           double upper = std::numeric_limits<double>::infinity());

// Ray minimization: argmin_{eta >= 0} f(eta * x). Returns 1 for x = 0 and
// for rays along which f is constant.
double RayMinimize(const ConicProgram& problem, const Vector& x);

// Line search: argmin_{theta >= 0} f(base + theta * direction).
double LineSearchStep(const ConicProgram& problem, const Vector& base,
                      const Vector& direction);

}  // namespace moco

#endif  // MOCO_LINE_SEARCH_H_
