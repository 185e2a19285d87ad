#ifndef MOCO_LANCZOS_H_
#define MOCO_LANCZOS_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "moco/types.h"

namespace moco {

// Symmetric operator exposed only through products: out = A * in.
using SymmetricApply = std::function<void(const Vector& in, Vector& out)>;

struct LanczosConfig {
  // Krylov dimension per cycle; clamped to n. Zero selects min(n, 200).
  int max_iters = 0;
  // Convergence: ||A q - lambda q|| <= residual_tol * ||A||_est.
  double residual_tol = 1e-8;
  // Thick restarts from the best Ritz vector before giving up.
  int max_restarts = 20;
  std::uint64_t seed = 0x5eed;
};

struct EigenPair {
  double value = 0.0;
  Vector vector;
  double residual = 0.0;
};

// Smallest eigenpair of a symmetric operator by Lanczos with full
// reorthogonalization. Throws Error(kEigFailure) when the residual test is
// not met after all restarts.
EigenPair MinEigLanczos(const SymmetricApply& apply, int n,
                        const LanczosConfig& cfg = {});

// The `count` smallest Ritz pairs from the same Krylov space, ascending.
// Only the first pair is held to the residual test; the rest are the best
// available approximations.
std::vector<EigenPair> BottomEigsLanczos(const SymmetricApply& apply, int n,
                                         int count,
                                         const LanczosConfig& cfg = {});

}  // namespace moco

#endif  // MOCO_LANCZOS_H_
