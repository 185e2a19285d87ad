#include "moco/solver.h"

#include <chrono>
#include <cmath>
#include <string>

#include "moco/line_search.h"

namespace moco {
namespace {

void RequireFinite(double value, const char* what) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::kNonFiniteValue, std::string(what) + " is not finite");
  }
}

void RequireFinite(const Vector& value, const char* what) {
  if (!value.allFinite()) {
    throw Error(ErrorCode::kNonFiniteValue, std::string(what) + " has non-finite entries");
  }
}

// Copy of `problem` whose oracles bump the counters in `stats`.
ConicProgram Counted(const ConicProgram& problem, SolveStats& stats) {
  ConicProgram out = problem;
  const SmoothFunction& f = problem.objective;
  out.objective.value = [&f, &stats](const Vector& x) {
    ++stats.value_evals;
    return f.value(x);
  };
  out.objective.gradient = [&f, &stats](const Vector& x) {
    ++stats.gradient_evals;
    return f.gradient(x);
  };
  if (f.restriction) {
    out.objective.restriction = [&f, &stats](const Vector& base, const Vector& dir) {
      ++stats.restriction_evals;
      return f.restriction(base, dir);
    };
  }
  return out;
}

}  // namespace

void SolverConfig::Validate() const {
  if (max_iters <= 0) throw Error(ErrorCode::kInvalidArgument, "max_iters must be positive");
  if (!(tol_eps >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "tol_eps must be >= 0");
  if (step_rule == StepRule::kHeuristic && !(heuristic_m > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "heuristic step rule requires M > 0");
  }
  if (greedy_period < 0) throw Error(ErrorCode::kInvalidArgument, "greedy_period must be >= 0");
  if (trace_every <= 0) throw Error(ErrorCode::kInvalidArgument, "trace_every must be positive");
}

const char* SolveStatusName(SolveStatus status) {
  return status == SolveStatus::kConverged ? "converged" : "max_iters";
}

double DeltaSchedule(int k, MomentumMode mode) {
  if (mode == MomentumMode::kCd) return 1.0;
  return 2.0 / (k + 2.0);
}

Vector MomentumUpdate(const Vector& g_prev, const Vector& grad, double delta) {
  if (delta == 1.0) return grad;
  return (1.0 - delta) * g_prev + delta * grad;
}

double DualCertificate(const Vector& g, const Vector& v) { return -g.dot(v); }

double ThetaHeuristic(int k, double m) { return 2.0 * m / (k + 2.0); }

KktResiduals ComputeKktResiduals(const ConicProgram& problem, const Vector& x) {
  Vector grad = problem.objective.gradient(x);
  double dist = problem.cone.DualDistance(grad);
  return {x.dot(grad), dist * dist};
}

SolveResult Solve(const ConicProgram& problem, const SolverConfig& config,
                  const IterationObserver& observer) {
  config.Validate();
  if (config.greedy_period > 0) {
    throw Error(ErrorCode::kInvalidArgument, "greedy steps are only available for SDP problems");
  }
  const Cone& cone = problem.cone;
  if (problem.dim != cone.dim()) {
    throw Error(ErrorCode::kInvalidArgument, "problem dimension does not match the cone");
  }

  SolveResult result;
  ConicProgram counted = Counted(problem, result.stats);
  const SmoothFunction& f = counted.objective;

  Vector x = config.x0.value_or(cone.DefaultStart());
  if (x.size() != problem.dim || !cone.Contains(x)) {
    throw Error(ErrorCode::kInvalidArgument, "x0 is not a point of " + cone.name());
  }
  Vector g = Vector::Zero(problem.dim);
  const double stop = std::sqrt(config.tol_eps);
  const auto start = std::chrono::steady_clock::now();

  IterateState state;
  for (int k = 0; k < config.max_iters; ++k) {
    double eta = RayMinimize(counted, x);
    ++result.stats.ray_searches;
    Vector p = eta * x;
    Vector grad = f.gradient(p);
    RequireFinite(grad, "gradient");
    double fval = f.value(p);
    RequireFinite(fval, "objective");

    double delta = DeltaSchedule(k, config.momentum_mode);
    g = MomentumUpdate(g, grad, delta);
    Vector v = cone.Lmo(g);
    double cert = DualCertificate(g, v);
    bool done = cert <= stop;

    double theta = 0.0;
    if (!done && !v.isZero(0.0)) {
      if (config.step_rule == StepRule::kHeuristic) {
        theta = ThetaHeuristic(k, config.heuristic_m);
      } else {
        theta = LineSearchStep(counted, p, v);
        ++result.stats.direction_searches;
      }
    }

    state.k = k;
    state.x = x;
    state.g = g;
    state.eta = eta;
    state.theta = theta;
    state.v = v;
    state.delta = delta;
    if (observer) observer(state, grad);

    if (k % config.trace_every == 0 || done) {
      TraceRecord rec;
      rec.k = k;
      rec.f_value = fval;
      rec.dual_cert = cert;
      rec.cs_residual = p.dot(grad);
      rec.eta = eta;
      rec.theta = theta;
      rec.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
      if (config.on_record) config.on_record(rec);
      result.trace.push_back(rec);
    }
    result.certified_dual_cert = cert;

    if (done) {
      result.status = SolveStatus::kConverged;
      result.final_point = std::move(p);
      return result;
    }
    x = p + theta * v;
  }

  double eta = RayMinimize(counted, x);
  ++result.stats.ray_searches;
  result.final_point = eta * x;
  result.status = SolveStatus::kMaxIters;
  return result;
}

}  // namespace moco
