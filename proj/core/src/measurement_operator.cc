#include "moco/measurement_operator.h"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace moco {

Vector MeasurementOperator::ApplyFactor(const Matrix& u) const {
  Vector out = Vector::Zero(size());
  Vector col_gram(size());
  for (Eigen::Index c = 0; c < u.cols(); ++c) {
    Gram(u.col(c), col_gram);
    out += col_gram;
  }
  return out;
}

Vector MeasurementOperator::ApplyDense(const Matrix& x) const {
  const int n = side();
  Vector out(size());
  Vector gv(n);
  for (int i = 0; i < size(); ++i) {
    double tr = 0.0;
    for (int j = 0; j < n; ++j) {
      MatvecI(i, x.col(j), gv);
      tr += gv[j];
    }
    out[i] = tr;
  }
  return out;
}

Matrix MeasurementOperator::AdjointDense(const Vector& a) const {
  const int n = side();
  Matrix out(n, n);
  Vector e = Vector::Zero(n);
  Vector col(n);
  for (int j = 0; j < n; ++j) {
    e[j] = 1.0;
    AdjointApply(a, e, col);
    out.col(j) = col;
    e[j] = 0.0;
  }
  return out;
}

DenseMeasurementOperator::DenseMeasurementOperator(std::vector<Matrix> g, Vector z)
    : g_(std::move(g)), z_(std::move(z)) {
  if (g_.empty() || static_cast<Eigen::Index>(g_.size()) != z_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "need one offset entry per G_i");
  }
  side_ = static_cast<int>(g_.front().rows());
  for (Matrix& gi : g_) {
    if (gi.rows() != side_ || gi.cols() != side_) {
      throw Error(ErrorCode::kInvalidArgument, "G_i must all be n x n");
    }
    gi = 0.5 * (gi + gi.transpose()).eval();
  }
}

void DenseMeasurementOperator::MatvecI(int i, const Vector& v, Vector& out) const {
  out.noalias() = g_[i] * v;
}

void DenseMeasurementOperator::Gram(const Vector& v, Vector& out) const {
  out.resize(size());
  for (int i = 0; i < size(); ++i) out[i] = v.dot(g_[i] * v);
}

void DenseMeasurementOperator::AdjointApply(const Vector& a, const Vector& v,
                                            Vector& out) const {
  out = Vector::Zero(side_);
  for (int i = 0; i < size(); ++i) out.noalias() += a[i] * (g_[i] * v);
}

Vector DenseMeasurementOperator::ApplyDense(const Matrix& x) const {
  Vector out(size());
  for (int i = 0; i < size(); ++i) out[i] = (g_[i].array() * x.array()).sum();
  return out;
}

EntrySamplingOperator::EntrySamplingOperator(int n,
                                             std::vector<std::pair<int, int>> entries,
                                             Vector z)
    : n_(n), entries_(std::move(entries)), z_(std::move(z)) {
  if (static_cast<Eigen::Index>(entries_.size()) != z_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "need one observation per sampled entry");
  }
  for (auto& [a, b] : entries_) {
    if (a < 0 || b < 0 || a >= n_ || b >= n_) {
      throw Error(ErrorCode::kInvalidArgument, "sampled entry out of range");
    }
    if (a > b) std::swap(a, b);
  }
}

void EntrySamplingOperator::MatvecI(int i, const Vector& v, Vector& out) const {
  out = Vector::Zero(n_);
  auto [a, b] = entries_[i];
  if (a == b) {
    out[a] = v[a];
  } else {
    out[a] = 0.5 * v[b];
    out[b] = 0.5 * v[a];
  }
}

void EntrySamplingOperator::Gram(const Vector& v, Vector& out) const {
  out.resize(size());
  for (int i = 0; i < size(); ++i) {
    out[i] = v[entries_[i].first] * v[entries_[i].second];
  }
}

void EntrySamplingOperator::AdjointApply(const Vector& a, const Vector& v,
                                         Vector& out) const {
  out = Vector::Zero(n_);
  for (int i = 0; i < size(); ++i) {
    auto [r, c] = entries_[i];
    if (r == c) {
      out[r] += a[i] * v[r];
    } else {
      out[r] += 0.5 * a[i] * v[c];
      out[c] += 0.5 * a[i] * v[r];
    }
  }
}

Vector EntrySamplingOperator::ApplyDense(const Matrix& x) const {
  Vector out(size());
  for (int i = 0; i < size(); ++i) {
    auto [a, b] = entries_[i];
    out[i] = 0.5 * (x(a, b) + x(b, a));
  }
  return out;
}

double AdjointLipschitzBound(const MeasurementOperator& op) {
  double sum_sq = 0.0;
  Vector a = Vector::Zero(op.size());
  for (int i = 0; i < op.size(); ++i) {
    a[i] = 1.0;
    Matrix gi = op.AdjointDense(a);
    a[i] = 0.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (gi + gi.transpose()),
                                             Eigen::EigenvaluesOnly);
    double nrm = es.eigenvalues().cwiseAbs().maxCoeff();
    sum_sq += nrm * nrm;
  }
  return std::sqrt(sum_sq);
}

}  // namespace moco
