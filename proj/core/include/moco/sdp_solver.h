#ifndef MOCO_SDP_SOLVER_H_
#define MOCO_SDP_SOLVER_H_

#include <functional>
#include <optional>
#include <vector>

#include "moco/conic_program.h"
#include "moco/lanczos.h"
#include "moco/measurement_operator.h"
#include "moco/sketch.h"
#include "moco/solver.h"

namespace moco::sdp {

// Objective F(X) = f(G(X) - z) + gamma * tr(X) over the PSD cone, with f a
// smooth convex function on R^d. The trace term is carried as a separate
// scalar so that f stays strictly convex.
struct SdpObjective {
  SmoothFunction f;
  double gamma = 0.0;
};

struct GreedyOptions {
  int rank = 1;
  int max_inner = 50;
  double armijo_c = 1e-4;
};

struct SdpOptions {
  int sketch_width = 3;
  // Keep a dense copy of X_k alongside the sketch. Allocates n x n.
  bool test_mode = false;
  LanczosConfig lanczos;
  GreedyOptions greedy;
};

// Memory-efficient iterate: y = G(X) - z, tr(X), the momentum vector
// g_tilde in R^d (G*(g_tilde) is the momentum gradient), and the sketch of X.
struct SdpIterate {
  int k = 0;
  Vector y;
  double tr_acc = 0.0;
  Vector g_tilde;
  SketchState sketch;
  std::optional<Matrix> dense_x;
};

// X_0 = 0: y = -z, empty sketch.
SdpIterate InitialIterate(const MeasurementOperator& op, const SdpOptions& opts,
                          std::uint64_t seed);

double EvaluateObjective(const SdpObjective& obj, const Vector& y, double tr_acc);

enum class GreedyStatus { kImproved, kStalled };

struct GreedyOutcome {
  int k = 0;
  GreedyStatus status = GreedyStatus::kStalled;
  double f_before = 0.0;
  double f_after = 0.0;
  double t = 1.0;
  int inner_iters = 0;
};

struct SdpResult {
  SolveStatus status = SolveStatus::kMaxIters;
  SolveTrace trace;
  double certified_dual_cert = std::numeric_limits<double>::infinity();
  // State at eta_K X_K.
  SdpIterate state;
  SolveStats stats;
  std::vector<GreedyOutcome> greedy;
};

// Per-iteration hook, after the LMO. `state` already holds eta_k X_k (y, tr,
// sketch scaled) and the updated g_tilde; `lambda` and `q` are the LMO
// eigenpair of G*(g_tilde) + gamma I.
using SdpObserver = std::function<void(const SdpIterate& state, double lambda,
                                       const Vector& q)>;

// Memory-efficient MOCO on F over the PSD cone. Stops once lambda_k >=
// -sqrt(eps). With config.greedy_period > 0 a greedy step runs after every
// greedy_period iterations.
SdpResult SdpSolve(const MeasurementOperator& op, const SdpObjective& obj,
                   const SolverConfig& config, const SdpOptions& opts,
                   const SdpObserver& observer = {});

// Burer-Monteiro move: minimize over (t, U in R^{n x r}) of
// f(t^2 (y + z) + G(U U^T) - z) + gamma (t^2 tr + ||U||_F^2), starting from
// the current point (t, U) = (1, 0). U = 0 is a stationary point in U, so
// the descent is seeded along the negative eigenvectors of the gradient,
// then alternates an exact search over t^2 with Armijo steps in U. Never increases F; returns
// kStalled and leaves the state unchanged when no descent is found.
GreedyOutcome GreedyStep(SdpIterate& state, const MeasurementOperator& op,
                         const SdpObjective& obj, const SdpOptions& opts);

struct FrankWolfeStepInfo {
  double lambda = 0.0;  // lambda_min of the gradient used for the atom
  double theta = 0.0;   // step on the segment towards the atom, in [0, 1]
};

// Frank-Wolfe over {X PSD, tr(X) <= trace_bound}: one step from `state`.
FrankWolfeStepInfo FrankWolfeStep(SdpIterate& state, const MeasurementOperator& op,
                      const SdpObjective& obj, double trace_bound,
                      const SdpOptions& opts, SolveStats* stats = nullptr);

// Runs config.max_iters Frank-Wolfe steps from X_0 = 0.
SdpResult FrankWolfeSolve(const MeasurementOperator& op, const SdpObjective& obj,
                          double trace_bound, const SolverConfig& config,
                          const SdpOptions& opts);

// Quadratic f(y) = (scale / 2) ||y||^2 with exact restriction.
SmoothFunction ScaledSquaredNorm(double scale);

}  // namespace moco::sdp

#endif  // MOCO_SDP_SOLVER_H_
