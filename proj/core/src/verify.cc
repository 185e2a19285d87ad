#include "moco/verify.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace moco::verify {

double FdGradientCheck(const ValueOracle& value, const GradientOracle& gradient,
                       const Vector& point, double h, std::uint64_t seed) {
  const Eigen::Index d = point.size();
  const Vector g = gradient(point);
  std::vector<Vector> dirs;
  if (d <= 50) {
    for (Eigen::Index i = 0; i < d; ++i) dirs.push_back(Vector::Unit(d, i));
  } else {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    for (int t = 0; t < 20; ++t) {
      Vector u(d);
      for (Eigen::Index i = 0; i < d; ++i) u[i] = normal(rng);
      dirs.push_back(u.normalized());
    }
  }

  double max_fd = 0.0;
  double max_dev = 0.0;
  for (const Vector& u : dirs) {
    double fd = (value(point + h * u) - value(point - h * u)) / (2.0 * h);
    max_fd = std::max(max_fd, std::abs(fd));
    max_dev = std::max(max_dev, std::abs(fd - g.dot(u)));
  }
  return max_dev / std::max(max_fd, 1e-8);
}

double PhiLowerBound(const PhiTracker& tracker, const Vector& g, const Vector& v,
                     double xstar_norm) {
  return tracker.alpha + xstar_norm * g.dot(v);
}

SmoothnessGap SmoothnessGapCheck(const ConicProgram& problem, double lipschitz,
                                 int trials, std::uint64_t seed) {
  if (!(lipschitz > 0.0)) throw Error(ErrorCode::kInvalidArgument, "L must be > 0");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const SmoothFunction& f = problem.objective;
  SmoothnessGap out;
  out.min_slack = std::numeric_limits<double>::infinity();
  Vector x(problem.dim), y(problem.dim);
  for (int t = 0; t < trials; ++t) {
    for (int i = 0; i < problem.dim; ++i) x[i] = normal(rng);
    for (int i = 0; i < problem.dim; ++i) y[i] = normal(rng);
    double fx = f.value(x);
    double fy = f.value(y);
    Vector gx = f.gradient(x);
    Vector gy = f.gradient(y);
    double lin = gy.dot(x - y);
    double slack = fx - fy - lin - (gy - gx).squaredNorm() / (2.0 * lipschitz);
    out.min_slack = std::min(out.min_slack, slack);
    out.scale = std::max(out.scale, std::abs(fx) + std::abs(fy) + std::abs(lin));
  }
  return out;
}

}  // namespace moco::verify
