#ifndef MOCO_TRACE_IO_H_
#define MOCO_TRACE_IO_H_

#include <ostream>

#include "moco/solver.h"

namespace moco {

struct TraceCsvOptions {
  // Adds a lambda_min column (SDP runs).
  bool lambda_column = false;
  // Writes wall_ms as 0 so that identical runs produce identical files.
  bool zero_wall_clock = false;
};

// Columns: k,f,dual_cert,cs,eta,theta,wall_ms[,lambda_min]. Values are
// printed with 17 significant digits.
void WriteTraceCsv(std::ostream& os, const SolveTrace& trace,
                   const TraceCsvOptions& opts = {});

// Streaming form of WriteTraceCsv.
void WriteTraceCsvHeader(std::ostream& os, const TraceCsvOptions& opts = {});
void WriteTraceCsvRow(std::ostream& os, const TraceRecord& r,
                      const TraceCsvOptions& opts = {});

}  // namespace moco

#endif  // MOCO_TRACE_IO_H_
