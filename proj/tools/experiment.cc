#include "experiment.h"

#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>

#include "moco/problems.h"
#include "moco/sdp_solver.h"
#include "moco/sketch.h"
#include "moco/solver.h"
#include "moco/trace_io.h"

#ifndef MOCO_GIT_DESCRIBE
#define MOCO_GIT_DESCRIBE "unknown"
#endif

namespace moco::cli {
namespace {

using nlohmann::json;

// + 0.0 turns -0 into 0.
json Finite(double v) { return std::isfinite(v) ? json(v + 0.0) : json(nullptr); }

json StatsJson(const SolveStats& s) {
  return {{"value_evals", s.value_evals},
          {"gradient_evals", s.gradient_evals},
          {"restriction_evals", s.restriction_evals},
          {"objective_evals", s.objective_evals()},
          {"direction_searches", s.direction_searches},
          {"ray_searches", s.ray_searches}};
}

struct Outcome {
  SolveStatus status = SolveStatus::kMaxIters;
  int iterations = 0;
  double final_f = 0.0;
  double certificate = 0.0;
  SolveStats stats;
  json extra = json::object();
};

SolverConfig BaseConfig(const RunSpec& spec) {
  SolverConfig cfg;
  cfg.max_iters = spec.iters;
  cfg.tol_eps = spec.eps;
  cfg.rng_seed = spec.seed;
  cfg.trace_every = spec.trace_every;
  cfg.momentum_mode = spec.algo == Algo::kCd ? MomentumMode::kCd : MomentumMode::kMoco;
  if (spec.algo == Algo::kMocoG) cfg.greedy_period = spec.greedy_every;
  return cfg;
}

int Iterations(SolveStatus status, const SolveTrace& trace, int iters) {
  return status == SolveStatus::kConverged && !trace.empty() ? trace.back().k : iters;
}

Outcome RunToy(const RunSpec& spec, SolverConfig cfg) {
  ConicProgram toy = ToyProgram();
  if (spec.algo == Algo::kMocoH) {
    cfg.step_rule = StepRule::kHeuristic;
    cfg.heuristic_m = *spec.heuristic_m;
  }
  SolveResult res = Solve(toy, cfg);
  Outcome out;
  out.status = res.status;
  out.iterations = Iterations(res.status, res.trace, spec.iters);
  out.final_f = toy.objective.value(res.final_point);
  out.certificate = res.certified_dual_cert;
  out.stats = res.stats;
  out.extra["final_point"] = std::vector<double>(res.final_point.begin(), res.final_point.end());
  return out;
}

// Shared tail of the matcomp and phase runs.
Outcome RunSdp(const RunSpec& spec, SolverConfig cfg, const MeasurementOperator& op,
               const sdp::SdpObjective& obj, std::optional<double> m_default,
               std::optional<double> tau_default, sdp::SdpResult& res) {
  sdp::SdpOptions opts;
  opts.sketch_width = spec.sketch_r;
  opts.lanczos.seed = spec.seed;
  Outcome out;
  if (spec.algo == Algo::kFw) {
    const double tau = spec.tau ? *spec.tau : *tau_default;
    out.extra["tau"] = tau;
    res = sdp::FrankWolfeSolve(op, obj, tau, cfg, opts);
  } else {
    if (spec.algo == Algo::kMocoH) {
      cfg.step_rule = StepRule::kHeuristic;
      cfg.heuristic_m = spec.heuristic_m ? *spec.heuristic_m : *m_default;
      out.extra["M"] = cfg.heuristic_m;
    }
    res = sdp::SdpSolve(op, obj, cfg, opts);
  }
  out.status = res.status;
  out.iterations = Iterations(res.status, res.trace, spec.iters);
  out.final_f = sdp::EvaluateObjective(obj, res.state.y, res.state.tr_acc);
  out.certificate = res.certified_dual_cert;
  out.stats = res.stats;
  int improved = 0;
  for (const auto& g : res.greedy) improved += g.status == sdp::GreedyStatus::kImproved;
  out.extra["greedy_steps"] = res.greedy.size();
  out.extra["greedy_improved"] = improved;
  out.extra["trace_x"] = res.state.tr_acc;
  return out;
}

Outcome RunMatComp(const RunSpec& spec, const SolverConfig& cfg) {
  MatCompProblem p = BuildMatComp(spec.ResolvedN(), spec.seed, spec.snr_db);
  sdp::SdpResult res;
  Outcome out = RunSdp(spec, cfg, *p.op, p.objective, std::nullopt, std::nullopt, res);
  out.extra["mask_size"] = p.instance.mask.size();
  LowRankFactor x_hat = SketchReconstruct(res.state.sketch, spec.recon_r);
  const double scale = (p.instance.v_true.transpose() * p.instance.v_true).norm();
  out.extra["recovery_error"] = FrobeniusDistance(x_hat, p.instance.v_true) / scale;
  return out;
}

Outcome RunPhase(const RunSpec& spec, const SolverConfig& cfg) {
  Vector x_true;
  json image = nullptr;
  if (!spec.pgm.empty()) {
    PgmImage img = ReadPgm(spec.pgm);
    x_true = img.pixels;
    image = {{"width", img.width}, {"height", img.height}};
  } else {
    x_true = SyntheticSignal(spec.ResolvedN(), spec.seed);
  }
  PhaseProblem p = MakePhaseProblem(
      BuildPhaseInstance(x_true, spec.m, spec.gamma, spec.seed, spec.snr_db));
  const double estimate = PhaseTraceEstimate(p.instance);
  sdp::SdpResult res;
  Outcome out = RunSdp(spec, cfg, *p.op, p.objective, estimate, 2.0 * estimate, res);
  out.extra["n"] = p.instance.n;
  out.extra["trace_estimate"] = estimate;
  out.extra["image"] = image;
  LowRankFactor x_hat = SketchReconstruct(res.state.sketch, spec.recon_r);
  Matrix x_col = x_true;
  out.extra["recovery_error"] = FrobeniusDistance(x_hat, x_col) / x_true.squaredNorm();
  WriteFactorFile(spec.out_prefix + ".recon.bin", x_hat);
  return out;
}

void WriteSummary(const std::string& path, const json& summary) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorCode::kIo, "cannot open " + path);
  os << summary.dump(2) << '\n';
  if (!os) throw Error(ErrorCode::kIo, "write failed: " + path);
}

}  // namespace

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kDegenerateSignal:
    case ErrorCode::kRankTooLarge:
      return kExitConfig;
    case ErrorCode::kIo:
      return kExitIo;
    default:
      return kExitSolver;
  }
}

const char* GitDescribe() { return MOCO_GIT_DESCRIBE; }

int RunExperiment(const RunSpec& spec, std::ostream& err) {
  try {
    spec.Validate();
  } catch (const Error& e) {
    err << "error " << e.what() << '\n';
    return ExitCodeFor(e.code());
  }

  json summary;
  summary["config"] = spec.ToJson();
  summary["git_describe"] = GitDescribe();
  const std::string summary_path = spec.out_prefix + ".summary.json";
  const auto start = std::chrono::steady_clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  };

  int code = kExitOk;
  try {
    const std::string trace_path = spec.out_prefix + ".trace.csv";
    std::ofstream trace(trace_path);
    if (!trace) throw Error(ErrorCode::kIo, "cannot open " + trace_path);
    TraceCsvOptions csv;
    csv.lambda_column = spec.subcommand != Subcommand::kToy;
    csv.zero_wall_clock = spec.deterministic;
    WriteTraceCsvHeader(trace, csv);

    SolverConfig cfg = BaseConfig(spec);
    cfg.on_record = [&](const TraceRecord& r) { WriteTraceCsvRow(trace, r, csv); };

    Outcome out;
    switch (spec.subcommand) {
      case Subcommand::kToy: out = RunToy(spec, cfg); break;
      case Subcommand::kMatComp: out = RunMatComp(spec, cfg); break;
      case Subcommand::kPhase: out = RunPhase(spec, cfg); break;
    }
    trace.flush();
    if (!trace) throw Error(ErrorCode::kIo, "write failed: " + trace_path);

    summary["status"] = SolveStatusName(out.status);
    summary["iterations"] = out.iterations;
    summary["final_f"] = out.final_f;
    summary["final_certificate"] = Finite(out.certificate);
    summary["stats"] = StatsJson(out.stats);
    summary["recovery_error"] = nullptr;
    for (auto& [key, value] : out.extra.items()) summary[key] = value;
  } catch (const Error& e) {
    err << "error " << e.what() << '\n';
    summary["status"] = "error";
    summary["error"] = {{"code", ErrorCodeName(e.code())}, {"message", e.what()}};
    code = ExitCodeFor(e.code());
  }
  summary["wall_ms"] = elapsed_ms();

  try {
    WriteSummary(summary_path, summary);
  } catch (const Error& e) {
    err << "error " << e.what() << '\n';
    if (code == kExitOk) code = kExitIo;
  }
  return code;
}

}  // namespace moco::cli
