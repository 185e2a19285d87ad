#include "moco/conic_program.h"

#include <Eigen/Eigenvalues>

namespace moco {

ConicProgram MakeQuadraticProgram(const Matrix& q, const Vector& b, double c,
                                  Cone cone) {
  if (q.rows() != q.cols() || q.rows() != b.size() || b.size() != cone.dim()) {
    throw Error(ErrorCode::kInvalidArgument, "quadratic program dimensions disagree");
  }
  Matrix qs = 0.5 * (q + q.transpose());
  ConicProgram p;
  p.dim = static_cast<int>(b.size());
  p.cone = std::move(cone);
  p.objective.value = [qs, b, c](const Vector& x) {
    return 0.5 * x.dot(qs * x) - b.dot(x) + c;
  };
  p.objective.gradient = [qs, b](const Vector& x) -> Vector { return qs * x - b; };
  p.objective.restriction = [qs, b, c](const Vector& base, const Vector& dir) {
    Vector qd = qs * dir;
    return Quadratic1D{0.5 * dir.dot(qd), base.dot(qd) - b.dot(dir),
                       0.5 * base.dot(qs * base) - b.dot(base) + c};
  };
  // Exact for the l2 pair; other pairs get the same bound via the spectrum,
  // which is valid whenever the primal norm dominates l2 (nuclear does).
  Eigen::SelfAdjointEigenSolver<Matrix> es(qs, Eigen::EigenvaluesOnly);
  p.smoothness = es.eigenvalues().cwiseAbs().maxCoeff();
  return p;
}

ConicProgram ScaleVariables(const ConicProgram& problem, const Vector& scale) {
  if (scale.size() != problem.dim || scale.minCoeff() <= 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "scale must be a positive vector of length dim");
  }
  bool constant = (scale.array() == scale[0]).all();
  if (!constant && problem.cone.kind() != ConeKind::kOrthant) {
    throw Error(ErrorCode::kUnsupportedCone,
                "non-uniform scaling does not preserve " + problem.cone.name());
  }
  ConicProgram out = problem;
  const SmoothFunction f = problem.objective;
  out.objective.value = [f, scale](const Vector& u) {
    return f.value(scale.cwiseProduct(u));
  };
  out.objective.gradient = [f, scale](const Vector& u) -> Vector {
    return scale.cwiseProduct(f.gradient(scale.cwiseProduct(u)));
  };
  if (f.restriction) {
    out.objective.restriction = [f, scale](const Vector& base, const Vector& dir) {
      return f.restriction(scale.cwiseProduct(base), scale.cwiseProduct(dir));
    };
  }
  if (problem.smoothness) {
    double smax = scale.maxCoeff();
    out.smoothness = *problem.smoothness * smax * smax;
  }
  return out;
}

}  // namespace moco
