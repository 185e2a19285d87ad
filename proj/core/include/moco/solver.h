#ifndef MOCO_SOLVER_H_
#define MOCO_SOLVER_H_

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "moco/conic_program.h"
#include "moco/types.h"

namespace moco {

// cd is MOCO with delta_k = 1 for every k.
enum class MomentumMode { kCd, kMoco };

enum class StepRule {
  kLineSearch,
  // theta_k = 2 M / (k + 2), with M an estimate of ||x*||.
  kHeuristic,
};

struct TraceRecord {
  int k = 0;
  double f_value = 0.0;
  double dual_cert = 0.0;  // -<g_k, v_k>
  double cs_residual = 0.0;  // <eta_k x_k, grad f(eta_k x_k)>
  double eta = 0.0;
  double theta = 0.0;
  double wall_ms = 0.0;
  // Minimum eigenvalue lambda_k of the momentum gradient (SDP runs only).
  double lambda_min = std::numeric_limits<double>::quiet_NaN();
};

using SolveTrace = std::vector<TraceRecord>;

struct SolverConfig {
  int max_iters = 300;
  double tol_eps = 0.0;
  MomentumMode momentum_mode = MomentumMode::kMoco;
  StepRule step_rule = StepRule::kLineSearch;
  double heuristic_m = 0.0;
  // Greedy Burer-Monteiro step period; SDP solver only. 0 disables it.
  int greedy_period = 0;
  std::uint64_t rng_seed = 0;
  int trace_every = 1;
  // Starting point; defaults to Cone::DefaultStart().
  std::optional<Vector> x0;
  // Called for each trace record as it is produced, so that a caller can
  // stream the trace and keep it when a later iteration throws.
  std::function<void(const TraceRecord&)> on_record;

  // Throws kInvalidArgument on inconsistent settings.
  void Validate() const;
};

struct IterateState {
  int k = 0;
  Vector x;      // x_k
  Vector g;      // momentum gradient average g_k
  double eta = 0.0;
  double theta = 0.0;
  Vector v;      // LMO output for g_k
  double delta = 1.0;
};


enum class SolveStatus { kConverged, kMaxIters };

const char* SolveStatusName(SolveStatus status);

struct SolveStats {
  long value_evals = 0;
  long gradient_evals = 0;
  long restriction_evals = 0;
  // Line searches along the LMO direction v_k.
  long direction_searches = 0;
  long ray_searches = 0;

  long objective_evals() const { return value_evals + gradient_evals + restriction_evals; }
};

struct SolveResult {
  Vector final_point;  // eta_K x_K
  SolveStatus status = SolveStatus::kMaxIters;
  SolveTrace trace;
  double certified_dual_cert = std::numeric_limits<double>::infinity();
  SolveStats stats;
};

// Called once per iteration after the LMO, before the step along v_k.
// `grad` is grad f(eta_k x_k); state.x holds x_k (not yet scaled by eta_k).
using IterationObserver =
    std::function<void(const IterateState& state, const Vector& grad)>;

// Momentum conic descent. Each iteration: ray minimization, momentum
// update, cone-ball LMO, line search along v_k (or the heuristic step),
// x_{k+1} = eta_k x_k + theta_k v_k. Stops once -<g_k, v_k> <= sqrt(eps).
SolveResult Solve(const ConicProgram& problem, const SolverConfig& config,
                  const IterationObserver& observer = {});

double DeltaSchedule(int k, MomentumMode mode);

Vector MomentumUpdate(const Vector& g_prev, const Vector& grad, double delta);

// -<g, v>; equals dist_*(g, K*) when v is the LMO output for g.
double DualCertificate(const Vector& g, const Vector& v);

double ThetaHeuristic(int k, double m);

struct KktResiduals {
  double cs = 0.0;             // <x, grad f(x)>
  double dual_dist_sq = 0.0;   // dist_*(grad f(x), K*)^2
};
KktResiduals ComputeKktResiduals(const ConicProgram& problem, const Vector& x);

}  // namespace moco

#endif  // MOCO_SOLVER_H_
