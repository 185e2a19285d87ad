#ifndef MOCO_SKETCH_H_
#define MOCO_SKETCH_H_

#include <cstdint>
#include <iosfwd>
#include <string>

#include "moco/types.h"

namespace moco {

// Randomized sketch S = X * Omega of a PSD iterate X, with Omega an n x R
// matrix of i.i.d. standard normals drawn from `seed`.
struct SketchState {
  Matrix omega;
  Matrix s;
  std::uint64_t seed = 0;

  int side() const { return static_cast<int>(omega.rows()); }
  int width() const { return static_cast<int>(omega.cols()); }
};

SketchState MakeSketch(int n, int width, std::uint64_t seed);

// S <- eta * S + theta * q (q^T Omega). O(nR).
void SketchUpdate(SketchState& sketch, double eta, double theta, const Vector& q);

// S <- scale * S + U (U^T Omega).
void SketchAddFactor(SketchState& sketch, double scale, const Matrix& u);

// X_hat = U diag(values) U^T with orthonormal U (n x r), values >= 0.
struct LowRankFactor {
  Matrix u;
  Vector values;

  int side() const { return static_cast<int>(u.rows()); }
  int rank() const { return static_cast<int>(values.size()); }
  Matrix Dense() const;
};

// Rank-r PSD approximation of X from its sketch (shifted Nystrom with
// Cholesky and a thin SVD). Requires r < R - 1; throws kRankTooLarge
// otherwise.
LowRankFactor SketchReconstruct(const SketchState& sketch, int r);

// ||U diag(values) U^T - V V^T||_F computed in O(n r k) without forming
// either matrix.
double FrobeniusDistance(const LowRankFactor& x, const Matrix& v);

// Factor file: n and r as little-endian uint64, then U column-major and the
// r values, all as little-endian float64.
void WriteFactor(std::ostream& os, const LowRankFactor& factor);
LowRankFactor ReadFactor(std::istream& is);
void WriteFactorFile(const std::string& path, const LowRankFactor& factor);
LowRankFactor ReadFactorFile(const std::string& path);

}  // namespace moco

#endif  // MOCO_SKETCH_H_
