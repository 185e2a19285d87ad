#include "moco/sdp_solver.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "moco/line_search.h"

namespace moco::sdp {
namespace {

SmoothFunction Counted(const SmoothFunction& f, SolveStats& stats) {
  SmoothFunction out;
  out.value = [&f, &stats](const Vector& y) {
    ++stats.value_evals;
    return f.value(y);
  };
  out.gradient = [&f, &stats](const Vector& y) {
    ++stats.gradient_evals;
    return f.gradient(y);
  };
  if (f.restriction) {
    out.restriction = [&f, &stats](const Vector& base, const Vector& dir) {
      ++stats.restriction_evals;
      return f.restriction(base, dir);
    };
  }
  return out;
}

void RequireFinite(const Vector& v, const char* what) {
  if (!v.allFinite()) {
    throw Error(ErrorCode::kNonFiniteValue, std::string(what) + " has non-finite entries");
  }
}

// argmin_{t in [0, upper]} f(base + t dir) + gamma (tr + t dtr).
double SearchAlong(const SmoothFunction& f, double gamma, const Vector& base,
                   const Vector& dir, double dtr,
                   double upper = std::numeric_limits<double>::infinity()) {
  if (f.restriction) {
    Quadratic1D q = f.restriction(base, dir);
    q.b += gamma * dtr;
    return MinimizeQuadratic1D(q, upper);
  }
  Restriction1D phi{
      [&](double t) { return f.value(base + t * dir) + gamma * t * dtr; },
      [&](double t) { return f.gradient(base + t * dir).dot(dir) + gamma * dtr; },
  };
  Search1DOptions opts;
  opts.upper = upper;
  return Minimize1D(phi, opts).t;
}

// argmin_{eta >= 0} f(eta w - z) + gamma eta tr.
double RaySearch(const SmoothFunction& f, double gamma, const Vector& w,
                 const Vector& z, double tr) {
  if (w.isZero(0.0) && tr == 0.0) return 1.0;
  if (f.restriction) {
    Quadratic1D q = f.restriction(-z, w);
    q.b += gamma * tr;
    if (q.a == 0.0 && q.b == 0.0) return 1.0;
    return MinimizeQuadratic1D(q);
  }
  Vector minus_z = -z;
  return SearchAlong(f, gamma, minus_z, w, tr);
}

SymmetricApply ShiftedAdjoint(const MeasurementOperator& op, const Vector& weights,
                              double shift) {
  return [&op, &weights, shift](const Vector& in, Vector& out) {
    op.AdjointApply(weights, in, out);
    if (shift != 0.0) out += shift * in;
  };
}

LanczosConfig SeededLanczos(const LanczosConfig& base, int k) {
  LanczosConfig cfg = base;
  cfg.seed = base.seed + static_cast<std::uint64_t>(k);
  return cfg;
}

void ScaleState(SdpIterate& state, double eta, const Vector& z) {
  if (eta == 1.0) return;
  state.y = eta * (state.y + z) - z;
  state.tr_acc *= eta;
  state.sketch.s *= eta;
  if (state.dense_x) *state.dense_x *= eta;
}

double ElapsedMs(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

SmoothFunction ScaledSquaredNorm(double scale) {
  SmoothFunction f;
  f.value = [scale](const Vector& y) { return 0.5 * scale * y.squaredNorm(); };
  f.gradient = [scale](const Vector& y) -> Vector { return scale * y; };
  f.restriction = [scale](const Vector& base, const Vector& dir) {
    return Quadratic1D{0.5 * scale * dir.squaredNorm(), scale * base.dot(dir),
                       0.5 * scale * base.squaredNorm()};
  };
  return f;
}

SdpIterate InitialIterate(const MeasurementOperator& op, const SdpOptions& opts,
                          std::uint64_t seed) {
  SdpIterate st;
  st.y = -op.offset();
  st.tr_acc = 0.0;
  st.g_tilde = Vector::Zero(op.size());
  st.sketch = MakeSketch(op.side(), opts.sketch_width, seed);
  if (opts.test_mode) st.dense_x = Matrix::Zero(op.side(), op.side());
  return st;
}

double EvaluateObjective(const SdpObjective& obj, const Vector& y, double tr_acc) {
  return obj.f.value(y) + obj.gamma * tr_acc;
}

SdpResult SdpSolve(const MeasurementOperator& op, const SdpObjective& obj,
                   const SolverConfig& config, const SdpOptions& opts,
                   const SdpObserver& observer) {
  config.Validate();
  if (obj.gamma < 0.0) throw Error(ErrorCode::kInvalidArgument, "gamma must be >= 0");
  if (opts.sketch_width < 1) throw Error(ErrorCode::kInvalidArgument, "sketch width must be >= 1");

  SdpResult result;
  const SmoothFunction f = Counted(obj.f, result.stats);
  const double gamma = obj.gamma;
  const Vector& z = op.offset();
  const int n = op.side();
  const double stop = std::sqrt(config.tol_eps);
  const auto start = std::chrono::steady_clock::now();

  SdpIterate state = InitialIterate(op, opts, config.rng_seed);
  Vector u(op.size());

  for (int k = 0; k < config.max_iters; ++k) {
    state.k = k;
    double eta = RaySearch(f, gamma, state.y + z, z, state.tr_acc);
    ++result.stats.ray_searches;
    ScaleState(state, eta, z);

    Vector grad = f.gradient(state.y);
    RequireFinite(grad, "gradient");
    double fval = f.value(state.y) + gamma * state.tr_acc;
    if (!std::isfinite(fval)) throw Error(ErrorCode::kNonFiniteValue, "objective is not finite");

    double delta = DeltaSchedule(k, config.momentum_mode);
    state.g_tilde = MomentumUpdate(state.g_tilde, grad, delta);
    EigenPair eig = MinEigLanczos(ShiftedAdjoint(op, state.g_tilde, gamma), n,
                                  SeededLanczos(opts.lanczos, k));
    const double lambda = eig.value;
    const bool done = lambda >= -stop;
    if (observer) observer(state, lambda, eig.vector);

    double theta = 0.0;
    if (!done && lambda < 0.0) {
      op.Gram(eig.vector, u);
      if (config.step_rule == StepRule::kHeuristic) {
        theta = ThetaHeuristic(k, config.heuristic_m);
      } else {
        theta = SearchAlong(f, gamma, state.y, u, 1.0);
        ++result.stats.direction_searches;
      }
    }

    if (k % config.trace_every == 0 || done) {
      TraceRecord rec;
      rec.k = k;
      rec.f_value = fval;
      rec.dual_cert = std::max(0.0, -lambda);
      rec.cs_residual = (state.y + z).dot(grad) + gamma * state.tr_acc;
      rec.eta = eta;
      rec.theta = theta;
      rec.wall_ms = ElapsedMs(start);
      rec.lambda_min = lambda;
      if (config.on_record) config.on_record(rec);
      result.trace.push_back(rec);
    }
    result.certified_dual_cert = std::max(0.0, -lambda);

    if (done) {
      result.status = SolveStatus::kConverged;
      result.state = std::move(state);
      return result;
    }

    if (theta != 0.0) {
      state.y += theta * u;
      state.tr_acc += theta;
      SketchUpdate(state.sketch, 1.0, theta, eig.vector);
      if (state.dense_x) {
        state.dense_x->noalias() += theta * eig.vector * eig.vector.transpose();
      }
    }
    state.k = k + 1;

    if (config.greedy_period > 0 && (k + 1) % config.greedy_period == 0) {
      SdpObjective counted_obj{f, gamma};
      GreedyOutcome g = GreedyStep(state, op, counted_obj, opts);
      g.k = k;
      result.greedy.push_back(g);
    }
  }

  double eta = RaySearch(f, gamma, state.y + z, z, state.tr_acc);
  ++result.stats.ray_searches;
  ScaleState(state, eta, z);
  result.state = std::move(state);
  result.status = SolveStatus::kMaxIters;
  return result;
}

GreedyOutcome GreedyStep(SdpIterate& state, const MeasurementOperator& op,
                         const SdpObjective& obj, const SdpOptions& opts) {
  const SmoothFunction& f = obj.f;
  const double gamma = obj.gamma;
  const Vector& z = op.offset();
  const int n = op.side();
  const int rank = std::clamp(opts.greedy.rank, 1, n);

  GreedyOutcome out;
  out.k = state.k;
  out.f_before = EvaluateObjective(obj, state.y, state.tr_acc);
  out.f_after = out.f_before;

  const Vector w = state.y + z;
  const double tr0 = state.tr_acc;

  // Seed U along the negative eigenvectors of G*(grad f) + gamma I.
  Vector h = f.gradient(state.y);
  std::vector<EigenPair> pairs;
  try {
    pairs = BottomEigsLanczos(ShiftedAdjoint(op, h, gamma), n, rank,
                              SeededLanczos(opts.lanczos, 7919 + state.k));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kEigFailure) throw;
    return out;
  }
  std::vector<int> neg;
  for (int i = 0; i < static_cast<int>(pairs.size()); ++i) {
    if (pairs[i].value < 0.0) neg.push_back(i);
  }
  if (neg.empty()) return out;
  Matrix q(n, static_cast<Eigen::Index>(neg.size()));
  for (int c = 0; c < q.cols(); ++c) q.col(c) = pairs[neg[c]].vector;

  Vector seed_dir = op.ApplyFactor(q);
  double s = SearchAlong(f, gamma, state.y, seed_dir, static_cast<double>(q.cols()));
  if (!(s > 0.0)) return out;

  double t = 1.0;
  Matrix u_fac = std::sqrt(s) * q;

  Vector arg(op.size());
  auto evaluate = [&](double tt, const Matrix& uu) {
    arg = (tt * tt) * w + op.ApplyFactor(uu) - z;
    return f.value(arg) + gamma * (tt * tt * tr0 + uu.squaredNorm());
  };

  double fcur = evaluate(t, u_fac);
  if (!(fcur <= out.f_before)) return out;

  // Block descent: t^2 enters f linearly through the argument, so the t block
  // is a 1D search over s = t^2 >= 0; U takes an Armijo gradient step. The
  // joint gradient is badly scaled (|w| dwarfs the U directions).
  Matrix grad_u(n, u_fac.cols());
  Vector col(n);
  double alpha = -1.0;
  int it = 0;
  for (; it < opts.greedy.max_inner; ++it) {
    Vector base = op.ApplyFactor(u_fac) - z;
    double s_new = SearchAlong(f, gamma, base, w, tr0);
    if (s_new >= 0.0 && std::isfinite(s_new)) {
      double f_s = evaluate(std::sqrt(s_new), u_fac);
      if (f_s <= fcur) {
        t = std::sqrt(s_new);
        fcur = f_s;
      }
    }

    arg = (t * t) * w + base;
    h = f.gradient(arg);
    for (int c = 0; c < u_fac.cols(); ++c) {
      op.AdjointApply(h, u_fac.col(c), col);
      grad_u.col(c) = 2.0 * (col + gamma * u_fac.col(c));
    }
    double gnorm_sq = grad_u.squaredNorm();
    if (!(gnorm_sq > 0.0) || !std::isfinite(gnorm_sq)) break;
    if (alpha < 0.0) alpha = std::max(u_fac.norm(), 1e-12) / std::sqrt(gnorm_sq);

    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      Matrix u_new = u_fac - alpha * grad_u;
      double f_new = evaluate(t, u_new);
      if (f_new <= fcur - opts.greedy.armijo_c * alpha * gnorm_sq) {
        u_fac = std::move(u_new);
        fcur = f_new;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;
    alpha *= 2.0;
  }

  // Commit t^2 X + U U^T.
  Vector y_new = (t * t) * w + op.ApplyFactor(u_fac) - z;
  double tr_new = t * t * tr0 + u_fac.squaredNorm();
  double f_new = EvaluateObjective(obj, y_new, tr_new);
  if (!(f_new <= out.f_before)) return out;

  state.y = std::move(y_new);
  state.tr_acc = tr_new;
  SketchAddFactor(state.sketch, t * t, u_fac);
  if (state.dense_x) {
    *state.dense_x *= t * t;
    state.dense_x->noalias() += u_fac * u_fac.transpose();
  }
  out.status = f_new < out.f_before ? GreedyStatus::kImproved : GreedyStatus::kStalled;
  out.f_after = f_new;
  out.t = t;
  out.inner_iters = it;
  return out;
}

FrankWolfeStepInfo FrankWolfeStep(SdpIterate& state, const MeasurementOperator& op,
                                  const SdpObjective& obj, double trace_bound,
                                  const SdpOptions& opts, SolveStats* stats) {
  if (!(trace_bound > 0.0)) throw Error(ErrorCode::kInvalidArgument, "trace bound must be > 0");
  const SmoothFunction& f = obj.f;
  const double gamma = obj.gamma;
  const Vector& z = op.offset();

  Vector h = f.gradient(state.y);
  RequireFinite(h, "gradient");
  EigenPair eig = MinEigLanczos(ShiftedAdjoint(op, h, gamma), op.side(),
                                SeededLanczos(opts.lanczos, state.k));
  FrankWolfeStepInfo info;
  info.lambda = eig.value;
  const bool atom = eig.value < 0.0;

  Vector dir = -(state.y + z);
  double dtr = -state.tr_acc;
  if (atom) {
    Vector g(op.size());
    op.Gram(eig.vector, g);
    dir += trace_bound * g;
    dtr += trace_bound;
  }
  info.theta = SearchAlong(f, gamma, state.y, dir, dtr, 1.0);
  if (stats) ++stats->direction_searches;

  const double theta = info.theta;
  state.y += theta * dir;
  state.tr_acc += theta * dtr;
  SketchUpdate(state.sketch, 1.0 - theta, atom ? theta * trace_bound : 0.0, eig.vector);
  if (state.dense_x) {
    *state.dense_x *= 1.0 - theta;
    if (atom) state.dense_x->noalias() += (theta * trace_bound) * eig.vector * eig.vector.transpose();
  }
  ++state.k;
  return info;
}

SdpResult FrankWolfeSolve(const MeasurementOperator& op, const SdpObjective& obj,
                          double trace_bound, const SolverConfig& config,
                          const SdpOptions& opts) {
  config.Validate();
  SdpResult result;
  SdpObjective counted{Counted(obj.f, result.stats), obj.gamma};
  const auto start = std::chrono::steady_clock::now();
  SdpIterate state = InitialIterate(op, opts, config.rng_seed);

  for (int k = 0; k < config.max_iters; ++k) {
    double fval = EvaluateObjective(counted, state.y, state.tr_acc);
    FrankWolfeStepInfo info = FrankWolfeStep(state, op, counted, trace_bound, opts, &result.stats);
    if (k % config.trace_every == 0) {
      TraceRecord rec;
      rec.k = k;
      rec.f_value = fval;
      rec.dual_cert = std::max(0.0, -info.lambda);
      rec.eta = 1.0;
      rec.theta = info.theta;
      rec.wall_ms = ElapsedMs(start);
      rec.lambda_min = info.lambda;
      if (config.on_record) config.on_record(rec);
      result.trace.push_back(rec);
    }
    result.certified_dual_cert = std::max(0.0, -info.lambda);
  }
  result.state = std::move(state);
  result.status = SolveStatus::kMaxIters;
  return result;
}

}  // namespace moco::sdp
