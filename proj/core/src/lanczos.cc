#include "moco/lanczos.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>

namespace moco {
namespace {

constexpr int kCheckEvery = 8;

struct CycleResult {
  std::vector<EigenPair> pairs;
  double norm_estimate = 0.0;
  bool converged = false;
};

// One Lanczos cycle of dimension <= m started at `start`. Returns the
// `count` smallest Ritz pairs.
CycleResult RunCycle(const SymmetricApply& apply, int n, int m, int count,
                     double tol, const Vector& start) {
  std::vector<Vector> basis;
  basis.reserve(m);
  std::vector<double> alpha;
  std::vector<double> beta;

  basis.push_back(start / start.norm());
  Vector w(n);
  CycleResult out;

  auto ritz = [&](int dim, double last_beta, bool final_check) {
    Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), dim);
    Eigen::VectorXd sub(std::max(dim - 1, 0));
    for (int i = 0; i + 1 < dim; ++i) sub[i] = beta[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (tri.info() != Eigen::Success) {
      throw Error(ErrorCode::kEigFailure, "tridiagonal eigensolve failed");
    }
    const auto& values = tri.eigenvalues();
    const auto& vecs = tri.eigenvectors();
    double norm_est = std::max(std::abs(values[0]), std::abs(values[dim - 1]));
    double res0 = std::abs(last_beta * vecs(dim - 1, 0));
    bool ok = res0 <= tol * std::max(norm_est, std::numeric_limits<double>::min());
    if (!ok && !final_check) return false;

    int keep = std::min(count, dim);
    out.pairs.clear();
    for (int j = 0; j < keep; ++j) {
      EigenPair p;
      p.value = values[j];
      p.vector = Vector::Zero(n);
      for (int i = 0; i < dim; ++i) p.vector += vecs(i, j) * basis[i];
      p.vector.normalize();
      p.residual = std::abs(last_beta * vecs(dim - 1, j));
      out.pairs.push_back(std::move(p));
    }
    out.norm_estimate = norm_est;
    out.converged = ok;
    return ok;
  };

  for (int j = 0; j < m; ++j) {
    apply(basis[j], w);
    double a = basis[j].dot(w);
    alpha.push_back(a);
    w -= a * basis[j];
    if (j > 0) w -= beta[j - 1] * basis[j - 1];
    // Two passes of classical Gram-Schmidt against the whole basis.
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vector& q : basis) w -= q.dot(w) * q;
    }
    double b = w.norm();
    int dim = j + 1;

    double scale = 0.0;
    for (double x : alpha) scale = std::max(scale, std::abs(x));
    for (double x : beta) scale = std::max(scale, std::abs(x));
    bool invariant = b <= 1e-14 * std::max(scale, 1.0) || dim == n;
    bool last = invariant || j + 1 == m;

    if (invariant) {
      // Krylov space is invariant: Ritz pairs are exact.
      ritz(dim, 0.0, true);
      out.converged = true;
      return out;
    }
    if (last) {
      ritz(dim, b, true);
      return out;
    }
    if ((dim % kCheckEvery) == 0 && ritz(dim, b, false)) return out;

    beta.push_back(b);
    basis.push_back(w / b);
  }
  return out;
}

std::vector<EigenPair> Solve(const SymmetricApply& apply, int n, int count,
                             const LanczosConfig& cfg) {
  if (n <= 0) throw Error(ErrorCode::kInvalidArgument, "lanczos: n must be positive");
  count = std::clamp(count, 1, n);
  int m = cfg.max_iters > 0 ? cfg.max_iters : std::min(n, 200);
  m = std::clamp(m, std::min(count + 1, n), n);

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal;
  Vector start(n);
  for (int i = 0; i < n; ++i) start[i] = normal(rng);

  CycleResult best;
  for (int cycle = 0; cycle <= cfg.max_restarts; ++cycle) {
    CycleResult res = RunCycle(apply, n, m, count, cfg.residual_tol, start);
    if (res.converged) return std::move(res.pairs);
    if (best.pairs.empty() || res.pairs[0].residual < best.pairs[0].residual) {
      best = res;
    }
    start = Vector::Zero(n);
    for (const auto& p : res.pairs) start += p.vector;
    if (!start.allFinite() || start.norm() == 0.0) {
      for (int i = 0; i < n; ++i) start[i] = normal(rng);
    }
  }
  throw Error(ErrorCode::kEigFailure,
              "lanczos did not reach residual " + std::to_string(cfg.residual_tol) +
                  " (best " + std::to_string(best.pairs.empty() ? -1.0 : best.pairs[0].residual) +
                  ")");
}

}  // namespace

EigenPair MinEigLanczos(const SymmetricApply& apply, int n,
                        const LanczosConfig& cfg) {
  return Solve(apply, n, 1, cfg).front();
}

std::vector<EigenPair> BottomEigsLanczos(const SymmetricApply& apply, int n,
                                         int count, const LanczosConfig& cfg) {
  return Solve(apply, n, count, cfg);
}

}  // namespace moco
