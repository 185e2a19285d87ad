#include "run_spec.h"

#include <cmath>
#include <cstdio>

#include "moco/types.h"

namespace moco::cli {
namespace {

void Require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
}

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

const char* SubcommandName(Subcommand s) {
  switch (s) {
    case Subcommand::kToy: return "toy";
    case Subcommand::kMatComp: return "matcomp";
    case Subcommand::kPhase: return "phase";
  }
  return "unknown";
}

const char* AlgoName(Algo a) {
  switch (a) {
    case Algo::kCd: return "cd";
    case Algo::kMoco: return "moco";
    case Algo::kMocoG: return "mocog";
    case Algo::kMocoH: return "mocoh";
    case Algo::kFw: return "fw";
  }
  return "unknown";
}

Algo ParseAlgo(const std::string& name) {
  for (Algo a : {Algo::kCd, Algo::kMoco, Algo::kMocoG, Algo::kMocoH, Algo::kFw}) {
    if (name == AlgoName(a)) return a;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown algo '" + name + "'");
}

int RunSpec::ResolvedN() const {
  if (n > 0) return n;
  switch (subcommand) {
    case Subcommand::kToy: return 2;
    case Subcommand::kMatComp: return 100;
    case Subcommand::kPhase: return 64;
  }
  return n;
}

void RunSpec::Validate() const {
  Require(iters > 0, "iters must be positive");
  Require(eps >= 0.0 && std::isfinite(eps), "eps must be a finite nonnegative number");
  Require(trace_every > 0, "trace-every must be positive");
  Require(greedy_every >= 0, "greedy-every must be nonnegative");
  Require(!heuristic_m || (*heuristic_m > 0.0 && std::isfinite(*heuristic_m)),
          "M must be positive");
  Require(!tau || (*tau > 0.0 && std::isfinite(*tau)), "tau must be positive");
  Require(!out_prefix.empty(), "out prefix must not be empty");
  Require(pgm.empty() || subcommand == Subcommand::kPhase, "--pgm applies to phase only");

  const bool sdp = subcommand != Subcommand::kToy;
  switch (subcommand) {
    case Subcommand::kToy:
      Require(n == 0 || n == 2, "toy is two-dimensional");
      Require(algo != Algo::kFw, "fw needs a compact set; use matcomp or phase");
      Require(algo != Algo::kMocoG, "the greedy step applies to SDP problems only");
      Require(algo != Algo::kMocoH || heuristic_m.has_value(), "toy mocoh needs --M");
      break;
    case Subcommand::kMatComp:
      Require(ResolvedN() >= 10, "matcomp needs n >= 10 (the observed block is 10 x 10)");
      Require(algo != Algo::kMocoH || heuristic_m.has_value(), "matcomp mocoh needs --M");
      Require(algo != Algo::kFw || tau.has_value(), "matcomp fw needs --tau");
      break;
    case Subcommand::kPhase:
      Require(pgm.empty() ? ResolvedN() >= 1 : n == 0, "phase needs n >= 1 (n is set by --pgm)");
      Require(m >= 1, "m must be positive");
      Require(gamma >= 0.0 && std::isfinite(gamma), "gamma must be finite and nonnegative");
      break;
  }
  if (sdp) {
    Require(sketch_r >= 2, "sketch-R must be at least 2");
    Require(recon_r >= 1 && recon_r < sketch_r - 1, "recon-r must satisfy 1 <= r < R - 1");
    Require(!std::isnan(snr_db), "snr-db must be a number");
  }
}

std::vector<std::string> RunSpec::ToArgs() const {
  std::vector<std::string> a = {SubcommandName(subcommand),
                                "--algo", AlgoName(algo),
                                "--iters", std::to_string(iters),
                                "--eps", Num(eps),
                                "--seed", std::to_string(seed),
                                "--m", std::to_string(m),
                                "--gamma", Num(gamma),
                                "--snr-db", Num(snr_db),
                                "--greedy-every", std::to_string(greedy_every),
                                "--sketch-R", std::to_string(sketch_r),
                                "--recon-r", std::to_string(recon_r),
                                "--trace-every", std::to_string(trace_every),
                                "--out", out_prefix};
  if (n > 0) a.insert(a.end(), {"--n", std::to_string(n)});
  if (heuristic_m) a.insert(a.end(), {"--M", Num(*heuristic_m)});
  if (tau) a.insert(a.end(), {"--tau", Num(*tau)});
  if (!pgm.empty()) a.insert(a.end(), {"--pgm", pgm});
  if (deterministic) a.push_back("--deterministic");
  return a;
}

nlohmann::json RunSpec::ToJson() const {
  nlohmann::json j;
  j["subcommand"] = SubcommandName(subcommand);
  j["algo"] = AlgoName(algo);
  j["iters"] = iters;
  j["eps"] = eps;
  j["seed"] = seed;
  j["n"] = ResolvedN();
  j["m"] = m;
  j["gamma"] = gamma;
  // JSON has no infinity.
  j["snr_db"] = std::isinf(snr_db) ? nlohmann::json("inf") : nlohmann::json(snr_db);
  j["greedy_every"] = greedy_every;
  j["sketch_R"] = sketch_r;
  j["recon_r"] = recon_r;
  j["trace_every"] = trace_every;
  j["out_prefix"] = out_prefix;
  j["M"] = heuristic_m ? nlohmann::json(*heuristic_m) : nlohmann::json(nullptr);
  j["tau"] = tau ? nlohmann::json(*tau) : nlohmann::json(nullptr);
  j["pgm"] = pgm;
  j["deterministic"] = deterministic;
  return j;
}

}  // namespace moco::cli
