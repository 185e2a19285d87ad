#include "moco/line_search.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace moco {
namespace {

double CheckedDerivative(const Restriction1D& phi, double t, int& evals) {
  ++evals;
  double d = phi.derivative(t);
  if (!std::isfinite(d)) {
    throw Error(ErrorCode::kNonFiniteValue,
                "non-finite directional derivative at t = " + std::to_string(t));
  }
  return d;
}

}  // namespace

Search1DResult Minimize1D(const Restriction1D& phi, const Search1DOptions& opts) {
  Search1DResult res;
  double d0 = CheckedDerivative(phi, 0.0, res.evals);
  if (d0 >= 0.0 || opts.upper <= 0.0) return res;

  double lo = 0.0;
  double dlo = d0;
  double hi;
  double dhi;
  if (std::isfinite(opts.upper)) {
    hi = opts.upper;
    dhi = CheckedDerivative(phi, hi, res.evals);
    if (dhi <= 0.0) {
      res.t = hi;
      return res;
    }
  } else {
    hi = 1.0;
    dhi = CheckedDerivative(phi, hi, res.evals);
    while (dhi < 0.0) {
      lo = hi;
      dlo = dhi;
      hi *= 2.0;
      if (hi > opts.overflow) {
        throw Error(ErrorCode::kLineSearchDivergence,
                    "objective decreases without bound along the search direction");
      }
      dhi = CheckedDerivative(phi, hi, res.evals);
    }
  }
  if (dhi == 0.0) {
    res.t = hi;
    return res;
  }

  // Illinois-modified regula falsi on phi' with a bisection safeguard.
  int side = 0;
  double t = 0.5 * (lo + hi);
  while (res.evals < opts.max_evals) {
    double width = hi - lo;
    if (width <= opts.rel_tol * std::max(hi, 1e-300)) break;
    t = (lo * dhi - hi * dlo) / (dhi - dlo);
    if (!(t > lo && t < hi) || (t - lo) < 1e-3 * width || (hi - t) < 1e-3 * width) {
      t = 0.5 * (lo + hi);
    }
    double dt = CheckedDerivative(phi, t, res.evals);
    if (dt == 0.0) {
      res.t = t;
      return res;
    }
    if (dt < 0.0) {
      lo = t;
      dlo = dt;
      if (side == -1) dhi *= 0.5;
      side = -1;
    } else {
      hi = t;
      dhi = dt;
      if (side == 1) dlo *= 0.5;
      side = 1;
    }
  }
  res.t = 0.5 * (lo + hi);
  return res;
}

double MinimizeQuadratic1D(const Quadratic1D& q, double upper) {
  if (!std::isfinite(q.a) || !std::isfinite(q.b)) {
    throw Error(ErrorCode::kNonFiniteValue, "non-finite quadratic restriction");
  }
  if (q.a > 0.0) return std::clamp(-q.b / (2.0 * q.a), 0.0, upper);
  // Linear or concave along the ray: the minimum sits on an endpoint.
  if (std::isfinite(upper)) return q(upper) < q(0.0) ? upper : 0.0;
  if (q.b >= 0.0 && q.a == 0.0) return 0.0;
  throw Error(ErrorCode::kLineSearchDivergence,
              "quadratic restriction is unbounded below on [0, inf)");
}

double RayMinimize(const ConicProgram& problem, const Vector& x) {
  if (x.isZero(0.0)) return 1.0;
  const auto& obj = problem.objective;
  if (obj.restriction) {
    Quadratic1D q = obj.restriction(Vector::Zero(x.size()), x);
    if (q.a == 0.0 && q.b == 0.0) return 1.0;
    return MinimizeQuadratic1D(q);
  }
  Restriction1D phi{
      [&](double t) { return obj.value(t * x); },
      [&](double t) { return obj.gradient(t * x).dot(x); },
  };
  Search1DResult res = Minimize1D(phi);
  if (res.t == 0.0 && phi.derivative(0.0) == 0.0 && phi.derivative(1.0) == 0.0) {
    return 1.0;
  }
  return res.t;
}

double LineSearchStep(const ConicProgram& problem, const Vector& base,
                      const Vector& direction) {
  if (direction.isZero(0.0)) return 0.0;
  const auto& obj = problem.objective;
  if (obj.restriction) return MinimizeQuadratic1D(obj.restriction(base, direction));
  Restriction1D phi{
      [&](double t) { return obj.value(base + t * direction); },
      [&](double t) { return obj.gradient(base + t * direction).dot(direction); },
  };
  return Minimize1D(phi).t;
}

}  // namespace moco
