#include "moco/cone.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace moco {
namespace {

constexpr double kConicTol = 1e-10;
constexpr double kPsdRelTol = 1e-8;

Matrix AsSymmetric(const Vector& x, int side) {
  Eigen::Map<const Matrix> m(x.data(), side, side);
  return 0.5 * (m + m.transpose());
}

Eigen::VectorXd Eigenvalues(const Matrix& sym) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::kEigFailure, "dense symmetric eigensolve failed");
  }
  return es.eigenvalues();
}

Vector Flatten(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

}  // namespace

Cone Cone::Orthant(int d) {
  if (d <= 0) throw Error(ErrorCode::kInvalidArgument, "orthant dimension must be positive");
  return Cone(ConeKind::kOrthant, d, 0);
}

Cone Cone::SecondOrder(int d) {
  if (d <= 0) throw Error(ErrorCode::kInvalidArgument, "SOC dimension must be positive");
  return Cone(ConeKind::kSecondOrder, d, 0);
}

Cone Cone::PsdDense(int side) {
  if (side <= 0) throw Error(ErrorCode::kInvalidArgument, "PSD side must be positive");
  return Cone(ConeKind::kPsdDense, side * side, side);
}

Cone Cone::PsdOperator(int side, LanczosConfig lanczos) {
  if (side <= 0) throw Error(ErrorCode::kInvalidArgument, "PSD side must be positive");
  Cone c(ConeKind::kPsdOperator, side * side, side);
  c.lanczos_ = lanczos;
  return c;
}

NormPair Cone::norms() const {
  switch (kind_) {
    case ConeKind::kOrthant:
    case ConeKind::kSecondOrder:
      return NormPair::kL2L2;
    case ConeKind::kPsdDense:
    case ConeKind::kPsdOperator:
      return NormPair::kNuclearOperator;
  }
  return NormPair::kL2L2;
}

std::string Cone::name() const {
  switch (kind_) {
    case ConeKind::kOrthant: return "orthant(" + std::to_string(dim_) + ")";
    case ConeKind::kSecondOrder: return "second_order(" + std::to_string(dim_) + ")";
    case ConeKind::kPsdDense: return "psd_dense(" + std::to_string(side_) + ")";
    case ConeKind::kPsdOperator: return "psd_operator(" + std::to_string(side_) + ")";
  }
  return "unknown";
}

double Cone::Norm(const Vector& x) const {
  if (norms() == NormPair::kL2L2) return x.norm();
  return Eigenvalues(AsSymmetric(x, side_)).cwiseAbs().sum();
}

double Cone::DualNorm(const Vector& g) const {
  if (norms() == NormPair::kL2L2) return g.norm();
  return Eigenvalues(AsSymmetric(g, side_)).cwiseAbs().maxCoeff();
}

bool Cone::Contains(const Vector& x) const {
  if (x.size() != dim_) return false;
  switch (kind_) {
    case ConeKind::kOrthant:
      return x.minCoeff() >= -kConicTol;
    case ConeKind::kSecondOrder:
      return x.head(dim_ - 1).norm() <= x[dim_ - 1] + kConicTol;
    case ConeKind::kPsdDense:
    case ConeKind::kPsdOperator: {
      Eigen::VectorXd ev = Eigenvalues(AsSymmetric(x, side_));
      double scale = ev.cwiseAbs().sum();
      return ev[0] >= -kPsdRelTol * scale;
    }
  }
  return false;
}

Vector Cone::Lmo(const Vector& g) const {
  if (g.size() != dim_) {
    throw Error(ErrorCode::kLmoFailure, "gradient has wrong dimension for " + name());
  }
  if (!g.allFinite()) throw Error(ErrorCode::kLmoFailure, "non-finite LMO input");
  switch (kind_) {
    case ConeKind::kOrthant:
      return LmoOrthant(g);
    case ConeKind::kSecondOrder:
      return LmoSecondOrder(g);
    case ConeKind::kPsdDense:
      return Flatten(LmoPsdDense(AsSymmetric(g, side_)).v);
    case ConeKind::kPsdOperator: {
      Matrix sym = AsSymmetric(g, side_);
      EigenPair p = MinEigLanczos(
          [&sym](const Vector& in, Vector& out) { out.noalias() = sym * in; },
          side_, lanczos_);
      if (p.value >= 0.0) return Vector::Zero(dim_);
      return Flatten(p.vector * p.vector.transpose());
    }
  }
  throw Error(ErrorCode::kUnsupportedCone, name());
}

double Cone::DualDistance(const Vector& g) const {
  switch (kind_) {
    case ConeKind::kOrthant:
      return (-g).cwiseMax(0.0).norm();
    case ConeKind::kSecondOrder:
      return (g - ProjectSecondOrder(g)).norm();
    case ConeKind::kPsdDense:
    case ConeKind::kPsdOperator:
      return std::max(0.0, -Eigenvalues(AsSymmetric(g, side_))[0]);
  }
  throw Error(ErrorCode::kUnsupportedCone, name());
}

Vector Cone::DefaultStart() const {
  Vector x = Vector::Zero(dim_);
  switch (kind_) {
    case ConeKind::kOrthant:
    case ConeKind::kPsdDense:
    case ConeKind::kPsdOperator:
      x[0] = 1.0;
      break;
    case ConeKind::kSecondOrder:
      x[dim_ - 1] = 1.0;
      break;
  }
  return x;
}

Vector LmoOrthant(const Vector& g) {
  Vector neg = (-g).cwiseMax(0.0);
  double nrm = neg.norm();
  if (nrm == 0.0) return Vector::Zero(g.size());
  return neg / nrm;
}

Vector LmoSecondOrder(const Vector& g) {
  const Eigen::Index d = g.size();
  Vector gx = g.head(d - 1);
  double gt = g[d - 1];
  double nx = gx.norm();
  if (nx <= gt) return Vector::Zero(d);  // g in K* = K
  if (nx <= -gt) return -g / g.norm();   // -g in K
  Vector v(d);
  v.head(d - 1) = -gx / (nx * std::numbers::sqrt2);
  v[d - 1] = 1.0 / std::numbers::sqrt2;
  return v;
}

PsdLmo LmoPsdDense(const Matrix& g) {
  const Eigen::Index n = g.rows();
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (g + g.transpose()));
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::kEigFailure, "dense symmetric eigensolve failed");
  }
  PsdLmo out;
  out.lambda_min = es.eigenvalues()[0];
  out.q = es.eigenvectors().col(0);
  out.v = out.lambda_min < 0.0 ? Matrix(out.q * out.q.transpose()) : Matrix::Zero(n, n);
  return out;
}

Vector ProjectSecondOrder(const Vector& x) {
  const Eigen::Index d = x.size();
  Vector xs = x.head(d - 1);
  double t = x[d - 1];
  double nx = xs.norm();
  if (nx <= t) return x;
  if (nx <= -t) return Vector::Zero(d);
  double a = 0.5 * (nx + t);
  Vector p(d);
  p.head(d - 1) = (a / nx) * xs;
  p[d - 1] = a;
  return p;
}

Vector BruteLmo(const Cone& cone, const Vector& g, int grid_n) {
  const int d = cone.dim();
  if (d < 2 || d > 3 ||
      (cone.kind() != ConeKind::kOrthant && cone.kind() != ConeKind::kSecondOrder)) {
    throw Error(ErrorCode::kUnsupportedCone, "brute LMO supports orthant/SOC in d = 2, 3");
  }
  constexpr double kPi = std::numbers::pi;
  Vector best = Vector::Zero(d);
  double best_val = 0.0;
  auto consider = [&](const Vector& v) {
    double val = g.dot(v);
    if (val < best_val) {
      best_val = val;
      best = v;
    }
  };

  if (d == 2) {
    // Orthant: angles [0, pi/2]. SOC {|x| <= t}: angles [pi/4, 3 pi/4].
    double lo = cone.kind() == ConeKind::kOrthant ? 0.0 : kPi / 4;
    double hi = cone.kind() == ConeKind::kOrthant ? kPi / 2 : 3 * kPi / 4;
    int n = std::max(grid_n, 2);
    Vector v(2);
    for (int i = 0; i < n; ++i) {
      double a = lo + (hi - lo) * i / (n - 1);
      v << std::cos(a), std::sin(a);
      consider(v);
    }
    return best;
  }

  // d == 3: v = (sin a cos b, sin a sin b, cos a).
  int side = std::max(2, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(grid_n)))));
  double a_hi = cone.kind() == ConeKind::kOrthant ? kPi / 2 : kPi / 4;
  double b_hi = cone.kind() == ConeKind::kOrthant ? kPi / 2 : 2 * kPi;
  Vector v(3);
  for (int i = 0; i < side; ++i) {
    double a = a_hi * i / (side - 1);
    for (int j = 0; j < side; ++j) {
      double b = b_hi * j / (side - 1);
      v << std::sin(a) * std::cos(b), std::sin(a) * std::sin(b), std::cos(a);
      consider(v);
    }
  }
  return best;
}

}  // namespace moco
