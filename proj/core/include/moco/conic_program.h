#ifndef MOCO_CONIC_PROGRAM_H_
#define MOCO_CONIC_PROGRAM_H_

#include <functional>
#include <optional>

#include "moco/cone.h"
#include "moco/types.h"

namespace moco {

// phi(t) = a t^2 + b t + c.
struct Quadratic1D {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double operator()(double t) const { return (a * t + b) * t + c; }
  double Derivative(double t) const { return 2.0 * a * t + b; }
};

// A convex, L-smooth function with oracles. `restriction`, when set, returns
// the exact quadratic t -> f(base + t * dir); it enables closed-form ray and
// line searches.
struct SmoothFunction {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
  std::function<Quadratic1D(const Vector& base, const Vector& dir)> restriction;
};

// min f(x) s.t. x in K.
struct ConicProgram {
  int dim = 0;
  SmoothFunction objective;
  Cone cone = Cone::Orthant(1);
  // Lipschitz constant of the gradient w.r.t. the cone's norm pair, if known.
  std::optional<double> smoothness;
};

// f(x) = 0.5 x^T Q x - b^T x + c.
ConicProgram MakeQuadraticProgram(const Matrix& q, const Vector& b, double c,
                                  Cone cone);

// Change of variables x = diag(scale) u. The scaled program is defined on the
// same cone, which requires a positive diagonal for the orthant and a constant
// positive scale for any other cone. Throws kUnsupportedCone otherwise.
ConicProgram ScaleVariables(const ConicProgram& problem, const Vector& scale);

}  // namespace moco

#endif  // MOCO_CONIC_PROGRAM_H_
