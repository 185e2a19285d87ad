#ifndef MOCO_TOOLS_EXPERIMENT_H_
#define MOCO_TOOLS_EXPERIMENT_H_

#include <ostream>

#include "moco/types.h"
#include "run_spec.h"

namespace moco::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSolver = 3;
inline constexpr int kExitIo = 4;

int ExitCodeFor(ErrorCode code);

// Runs one spec and writes <prefix>.trace.csv, <prefix>.summary.json and,
// for SDP runs, <prefix>.recon.bin. Trace rows are streamed, so a failing
// run leaves the rows produced so far plus a summary with status "error".
// Returns the process exit code; diagnostics go to `err`.
int RunExperiment(const RunSpec& spec, std::ostream& err);

const char* GitDescribe();

}  // namespace moco::cli

#endif  // MOCO_TOOLS_EXPERIMENT_H_
