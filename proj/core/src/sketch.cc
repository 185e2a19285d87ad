#include "moco/sketch.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include "binary_io.h"

namespace moco {

SketchState MakeSketch(int n, int width, std::uint64_t seed) {
  if (n <= 0 || width <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "sketch needs n > 0 and R > 0");
  }
  SketchState sk;
  sk.seed = seed;
  sk.omega.resize(n, width);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  // Column-major fill order is part of the reproducibility contract.
  for (int c = 0; c < width; ++c) {
    for (int r = 0; r < n; ++r) sk.omega(r, c) = normal(rng);
  }
  sk.s = Matrix::Zero(n, width);
  return sk;
}

void SketchUpdate(SketchState& sketch, double eta, double theta, const Vector& q) {
  if (eta != 1.0) sketch.s *= eta;
  if (theta != 0.0) {
    Eigen::RowVectorXd qt_omega = q.transpose() * sketch.omega;
    sketch.s.noalias() += (theta * q) * qt_omega;
  }
}

void SketchAddFactor(SketchState& sketch, double scale, const Matrix& u) {
  if (scale != 1.0) sketch.s *= scale;
  if (u.cols() > 0) {
    Matrix ut_omega = u.transpose() * sketch.omega;
    sketch.s.noalias() += u * ut_omega;
  }
}

Matrix LowRankFactor::Dense() const {
  return u * values.asDiagonal() * u.transpose();
}

LowRankFactor SketchReconstruct(const SketchState& sketch, int r) {
  const int n = sketch.side();
  const int width = sketch.width();
  if (r < 1 || r >= width - 1) {
    throw Error(ErrorCode::kRankTooLarge,
                "reconstruction rank " + std::to_string(r) + " needs r < R - 1 with R = " +
                    std::to_string(width));
  }
  LowRankFactor out;
  const double s_norm = sketch.s.norm();
  if (s_norm == 0.0) {
    out.u = Matrix::Identity(n, r);
    out.values = Vector::Zero(r);
    return out;
  }

  double shift = std::sqrt(static_cast<double>(n)) * std::numeric_limits<double>::epsilon() * s_norm;
  for (int attempt = 0; attempt < 8; ++attempt, shift *= 10.0) {
    Matrix s_shift = sketch.s + shift * sketch.omega;
    Matrix core = sketch.omega.transpose() * s_shift;
    core = 0.5 * (core + core.transpose()).eval();
    Eigen::LLT<Matrix> chol(core);
    if (chol.info() != Eigen::Success) continue;
    // E = S_shift * L^{-T}, so that E E^T = S_shift core^{-1} S_shift^T.
    Matrix e = chol.matrixL().solve(s_shift.transpose()).transpose();
    Eigen::BDCSVD<Matrix> svd(e, Eigen::ComputeThinU);
    Vector sigma = svd.singularValues();
    out.u = svd.matrixU().leftCols(r);
    out.values.resize(r);
    for (int i = 0; i < r; ++i) out.values[i] = std::max(0.0, sigma[i] * sigma[i] - shift);
    return out;
  }
  throw Error(ErrorCode::kEigFailure, "sketch core matrix is not positive definite");
}

double FrobeniusDistance(const LowRankFactor& x, const Matrix& v) {
  Matrix utv = x.u.transpose() * v;
  double aa = x.values.squaredNorm();
  double ab = (x.values.asDiagonal() * utv.cwiseAbs2()).sum();
  double bb = (v.transpose() * v).squaredNorm();
  return std::sqrt(std::max(0.0, aa - 2.0 * ab + bb));
}

void WriteFactor(std::ostream& os, const LowRankFactor& factor) {
  internal::PutU64(os, static_cast<std::uint64_t>(factor.side()));
  internal::PutU64(os, static_cast<std::uint64_t>(factor.rank()));
  for (Eigen::Index i = 0; i < factor.u.size(); ++i) internal::PutF64(os, factor.u.data()[i]);
  for (Eigen::Index i = 0; i < factor.values.size(); ++i) internal::PutF64(os, factor.values[i]);
  if (!os) throw Error(ErrorCode::kIo, "failed writing factor");
}

LowRankFactor ReadFactor(std::istream& is) {
  std::uint64_t n = internal::GetU64(is);
  std::uint64_t r = internal::GetU64(is);
  if (n == 0 || r > n || n > (1u << 26)) throw Error(ErrorCode::kIo, "bad factor header");
  LowRankFactor f;
  f.u.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(r));
  f.values.resize(static_cast<Eigen::Index>(r));
  for (Eigen::Index i = 0; i < f.u.size(); ++i) f.u.data()[i] = internal::GetF64(is);
  for (Eigen::Index i = 0; i < f.values.size(); ++i) f.values[i] = internal::GetF64(is);
  return f;
}

void WriteFactorFile(const std::string& path, const LowRankFactor& factor) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::kIo, "cannot open " + path);
  WriteFactor(os, factor);
}

LowRankFactor ReadFactorFile(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorCode::kIo, "cannot open " + path);
  return ReadFactor(is);
}

}  // namespace moco
