#ifndef MOCO_CONE_H_
#define MOCO_CONE_H_

#include <optional>
#include <string>

#include "moco/lanczos.h"
#include "moco/types.h"

namespace moco {

enum class ConeKind {
  kOrthant,
  kSecondOrder,
  // Symmetric n x n matrices stored column-major as vectors of length n^2.
  kPsdDense,
  // Same storage as kPsdDense, but the LMO uses Lanczos on matrix-vector
  // products instead of a dense eigendecomposition.
  kPsdOperator,
};

// Norm pair (primal, dual) attached to a cone.
enum class NormPair {
  kL2L2,
  kNuclearOperator,
};

// A self-dual convex cone together with its norm pair. The ambient space is
// R^dim; for the PSD kinds dim = side^2.
class Cone {
 public:
  static Cone Orthant(int d);
  // K = {(x, t) : ||x||_2 <= t}, with t the last coordinate.
  static Cone SecondOrder(int d);
  static Cone PsdDense(int side);
  static Cone PsdOperator(int side, LanczosConfig lanczos = {});

  ConeKind kind() const { return kind_; }
  int dim() const { return dim_; }
  // Matrix side for PSD kinds, otherwise 0.
  int side() const { return side_; }
  NormPair norms() const;
  std::string name() const;

  double Norm(const Vector& x) const;
  double DualNorm(const Vector& g) const;

  // Membership with the tolerances used throughout the solver: absolute
  // 1e-10 for orthant/SOC, lambda_min >= -1e-8 ||X|| for PSD.
  bool Contains(const Vector& x) const;

  // argmin <g, v> over v in K with ||v|| <= 1. Ties at value zero return 0.
  Vector Lmo(const Vector& g) const;

  // dist_*(g, K*) in the dual norm. K is self-dual for every kind here.
  double DualDistance(const Vector& g) const;

  // Canonical nonzero starting point: e_1 for orthant/SOC (the axis
  // direction e_d for SOC, which is interior), e_1 e_1^T for PSD.
  Vector DefaultStart() const;

  const LanczosConfig& lanczos() const { return lanczos_; }

 private:
  Cone(ConeKind kind, int dim, int side) : kind_(kind), dim_(dim), side_(side) {}

  ConeKind kind_;
  int dim_;
  int side_;
  LanczosConfig lanczos_;
};

// Closed-form LMOs, exposed for direct testing.
Vector LmoOrthant(const Vector& g);
Vector LmoSecondOrder(const Vector& g);

struct PsdLmo {
  double lambda_min = 0.0;
  Vector q;  // unit eigenvector for lambda_min
  Matrix v;  // q q^T when lambda_min < 0, else zero
};
PsdLmo LmoPsdDense(const Matrix& g);

// Exhaustive grid minimization of <g, v> over K intersected with the unit
// ball, for orthant and SOC in dimension 2 or 3. The search covers the
// origin and a grid over K intersected with the unit sphere, which suffices
// because a linear function on a segment from 0 is minimized at an endpoint.
// Test oracle only.
Vector BruteLmo(const Cone& cone, const Vector& g, int grid_n);

// Euclidean projection onto the second-order cone.
Vector ProjectSecondOrder(const Vector& x);

}  // namespace moco

#endif  // MOCO_CONE_H_
