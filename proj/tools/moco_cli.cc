// moco: runs one solver configuration on the toy, matrix-completion or
// phase-retrieval problem and writes trace/summary files.

#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "experiment.h"
#include "run_spec.h"

extern char** environ;

namespace {

using moco::cli::Algo;
using moco::cli::RunSpec;
using moco::cli::Subcommand;

// Starts `argv` with CDK_SEED removed from the environment, so the child's
// explicit --seed is the one that counts.
pid_t Spawn(const std::vector<std::string>& args) {
  std::vector<char*> argv;
  for (const std::string& a : args) argv.push_back(const_cast<char*>(a.c_str()));
  argv.push_back(nullptr);
  std::vector<char*> env;
  for (char** e = environ; *e != nullptr; ++e) {
    if (std::strncmp(*e, "CDK_SEED=", 9) != 0) env.push_back(*e);
  }
  env.push_back(nullptr);
  pid_t pid = 0;
  int rc = posix_spawn(&pid, "/proc/self/exe", nullptr, nullptr, argv.data(), env.data());
  if (rc != 0) {
    std::cerr << "error Io: posix_spawn failed: " << std::strerror(rc) << '\n';
    return -1;
  }
  return pid;
}

// One child process per seed, at most `jobs` running at a time. Returns the
// largest child exit code.
int FanOut(const RunSpec& base, const std::vector<std::uint64_t>& seeds, int jobs) {
  std::map<pid_t, std::uint64_t> running;
  int worst = moco::cli::kExitOk;
  auto reap = [&] {
    int status = 0;
    pid_t pid = waitpid(-1, &status, 0);
    if (pid < 0) return false;
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : moco::cli::kExitSolver;
    if (code != 0) std::cerr << "seed " << running[pid] << " exited with " << code << '\n';
    worst = std::max(worst, code);
    running.erase(pid);
    return true;
  };
  for (std::uint64_t seed : seeds) {
    while (static_cast<int>(running.size()) >= jobs) {
      if (!reap()) break;
    }
    RunSpec child = base;
    child.seed = seed;
    child.out_prefix = base.out_prefix + ".seed" + std::to_string(seed);
    std::vector<std::string> args = child.ToArgs();
    args.insert(args.begin(), "moco");
    pid_t pid = Spawn(args);
    if (pid < 0) {
      worst = std::max(worst, moco::cli::kExitIo);
      continue;
    }
    running[pid] = seed;
  }
  while (!running.empty() && reap()) {
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conic descent and momentum conic descent experiment runner", "moco"};
  app.set_version_flag("--version", std::string(moco::cli::GitDescribe()));
  app.set_config("--config", "", "key=value file; flags given on the command line win");
  app.require_subcommand(1);
  app.fallthrough();

  RunSpec spec;
  std::string algo = "moco";
  std::vector<std::uint64_t> seeds;
  int jobs = 1;

  app.add_option("--algo", algo, "cd | moco | mocog | mocoh | fw")
      ->check(CLI::IsMember({"cd", "moco", "mocog", "mocoh", "fw"}));
  app.add_option("--iters", spec.iters, "Iteration budget")->capture_default_str();
  app.add_option("--eps", spec.eps, "Stop once the dual certificate is <= sqrt(eps)")
      ->capture_default_str();
  app.add_option("--seed", spec.seed, "Instance and sketch seed (CDK_SEED overrides)")
      ->capture_default_str();
  app.add_option("--n", spec.n, "Matrix side (matcomp 100, phase 64)");
  app.add_option("--m", spec.m, "Number of sign masks (phase)")->capture_default_str();
  app.add_option("--gamma", spec.gamma, "Trace penalty (phase)")->capture_default_str();
  app.add_option("--snr-db", spec.snr_db, "Measurement SNR in dB; inf disables noise")
      ->capture_default_str();
  app.add_option("--greedy-every", spec.greedy_every, "Greedy step period for mocog")
      ->capture_default_str();
  app.add_option("--sketch-R", spec.sketch_r, "Sketch width")->capture_default_str();
  app.add_option("--recon-r", spec.recon_r, "Reconstruction rank")->capture_default_str();
  app.add_option("--trace-every", spec.trace_every, "Record every k-th iteration")
      ->capture_default_str();
  app.add_option("--out", spec.out_prefix, "Output file prefix")->capture_default_str();
  app.add_option("--M", spec.heuristic_m, "Norm bound for the mocoh step 2M/(k+2)");
  app.add_option("--tau", spec.tau, "Trace bound for fw");
  app.add_option("--pgm", spec.pgm, "Binary PGM image used as the phase signal");
  app.add_flag("--deterministic", spec.deterministic, "Write wall_ms as 0 in the trace");
  app.add_option("--seeds", seeds, "Run one child process per seed")->delimiter(',');
  app.add_option("--jobs", jobs, "Concurrent child processes for --seeds")
      ->check(CLI::PositiveNumber);

  auto* toy = app.add_subcommand("toy", "min (x-1)^2 + y^2 over the nonnegative orthant");
  auto* matcomp = app.add_subcommand("matcomp", "Symmetric PSD matrix completion");
  auto* phase = app.add_subcommand("phase", "Phase retrieval with DCT sign masks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : moco::cli::kExitConfig;
  }

  if (toy->parsed()) spec.subcommand = Subcommand::kToy;
  if (matcomp->parsed()) spec.subcommand = Subcommand::kMatComp;
  if (phase->parsed()) spec.subcommand = Subcommand::kPhase;
  spec.algo = moco::cli::ParseAlgo(algo);

  if (const char* env = std::getenv("CDK_SEED"); env != nullptr && seeds.empty()) {
    char* end = nullptr;
    errno = 0;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (errno != 0 || end == env || *end != '\0' || env[0] == '-') {
      std::cerr << "error InvalidArgument: CDK_SEED is not an unsigned integer\n";
      return moco::cli::kExitConfig;
    }
    spec.seed = v;
  }

  if (!seeds.empty()) {
    try {
      spec.Validate();
    } catch (const moco::Error& e) {
      std::cerr << "error " << e.what() << '\n';
      return moco::cli::ExitCodeFor(e.code());
    }
    return FanOut(spec, seeds, jobs);
  }
  return moco::cli::RunExperiment(spec, std::cerr);
}
