#ifndef MOCO_MEASUREMENT_OPERATOR_H_
#define MOCO_MEASUREMENT_OPERATOR_H_

#include <utility>
#include <vector>

#include "moco/types.h"

namespace moco {

// Linear map G(X) = [tr(G_1 X), ..., tr(G_d X)] on symmetric n x n matrices,
// with adjoint G*(a) = sum_i a_i G_i, plus the offset z of f(G(X) - z).
// Implementations expose the G_i only through products so that no n x n
// array is needed.
class MeasurementOperator {
 public:
  virtual ~MeasurementOperator() = default;

  virtual int side() const = 0;  // n
  virtual int size() const = 0;  // d
  virtual const Vector& offset() const = 0;  // z

  // out = G_i v.
  virtual void MatvecI(int i, const Vector& v, Vector& out) const = 0;
  // out_i = v^T G_i v. For a unit q this is G(q q^T).
  virtual void Gram(const Vector& v, Vector& out) const = 0;
  // out = G*(a) v.
  virtual void AdjointApply(const Vector& a, const Vector& v, Vector& out) const = 0;

  // G(U U^T) = sum over columns c of Gram(U_c).
  Vector ApplyFactor(const Matrix& u) const;

  // Dense helpers for tests and small instances; they allocate n x n.
  virtual Vector ApplyDense(const Matrix& x) const;
  Matrix AdjointDense(const Vector& a) const;
};

// Explicit symmetric G_i. Test instances and tiny problems only.
class DenseMeasurementOperator final : public MeasurementOperator {
 public:
  DenseMeasurementOperator(std::vector<Matrix> g, Vector z);

  int side() const override { return side_; }
  int size() const override { return static_cast<int>(g_.size()); }
  const Vector& offset() const override { return z_; }

  void MatvecI(int i, const Vector& v, Vector& out) const override;
  void Gram(const Vector& v, Vector& out) const override;
  void AdjointApply(const Vector& a, const Vector& v, Vector& out) const override;
  Vector ApplyDense(const Matrix& x) const override;

  const Matrix& g(int i) const { return g_[i]; }

 private:
  std::vector<Matrix> g_;
  Vector z_;
  int side_;
};

// G_i = (E_ab + E_ba) / 2 for each sampled pair (a, b) with a <= b, so that
// tr(G_i X) = X_ab for symmetric X.
class EntrySamplingOperator final : public MeasurementOperator {
 public:
  EntrySamplingOperator(int n, std::vector<std::pair<int, int>> entries, Vector z);

  int side() const override { return n_; }
  int size() const override { return static_cast<int>(entries_.size()); }
  const Vector& offset() const override { return z_; }

  void MatvecI(int i, const Vector& v, Vector& out) const override;
  void Gram(const Vector& v, Vector& out) const override;
  void AdjointApply(const Vector& a, const Vector& v, Vector& out) const override;
  Vector ApplyDense(const Matrix& x) const override;

  const std::vector<std::pair<int, int>>& entries() const { return entries_; }

 private:
  int n_;
  std::vector<std::pair<int, int>> entries_;
  Vector z_;
};

// Upper bound on the Lipschitz constant of G* from operator to l2 norms:
// || [||G_1||_op, ..., ||G_d||_op] ||_2. Uses dense G_i; small n only.
double AdjointLipschitzBound(const MeasurementOperator& op);

}  // namespace moco

#endif  // MOCO_MEASUREMENT_OPERATOR_H_
