#ifndef MOCO_VERIFY_H_
#define MOCO_VERIFY_H_

#include <cstdint>
#include <functional>

#include "moco/conic_program.h"

namespace moco::verify {

using ValueOracle = std::function<double(const Vector&)>;
using GradientOracle = std::function<Vector(const Vector&)>;

// Central differences per coordinate, or along 20 random unit directions
// when the dimension exceeds 50. Returns max |fd - grad| / max(|fd|_inf, 1e-8).
double FdGradientCheck(const ValueOracle& value, const GradientOracle& gradient,
                       const Vector& point, double h = 1e-6, std::uint64_t seed = 1);

// Constant part of the affine lower model Phi_k(x) = alpha + <g_{k-1}, x>.
// The linear part is the solver's momentum vector, so only alpha is stored.
struct PhiTracker {
  double alpha = 0.0;

  // alpha <- (1 - delta) alpha + delta f(eta_k x_k).
  void Update(double delta, double f_at_ray_point) {
    alpha = (1.0 - delta) * alpha + delta * f_at_ray_point;
  }
};

// Phi_{k+1}(||x*|| v_k) = alpha_{k+1} + ||x*|| <g_k, v_k>; a lower bound on f*.
double PhiLowerBound(const PhiTracker& tracker, const Vector& g, const Vector& v,
                     double xstar_norm);

struct SmoothnessGap {
  double min_slack = 0.0;
  // Largest |f(x)| + |f(y)| + |<grad f(y), x - y>| seen; scales the tolerance.
  double scale = 0.0;
};

// min over random pairs of f(x) - f(y) - <grad f(y), x - y>
//   - ||grad f(y) - grad f(x)||^2 / (2L), with l2 norms.
// Points are standard normal in R^dim.
SmoothnessGap SmoothnessGapCheck(const ConicProgram& problem, double lipschitz,
                                 int trials, std::uint64_t seed);

}  // namespace moco::verify

#endif  // MOCO_VERIFY_H_
