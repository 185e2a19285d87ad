#include "moco/trace_io.h"

#include <cstdio>

namespace moco {
namespace {

void Put(std::ostream& os, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  os << buf;
}

}  // namespace

void WriteTraceCsvHeader(std::ostream& os, const TraceCsvOptions& opts) {
  os << "k,f,dual_cert,cs,eta,theta,wall_ms";
  if (opts.lambda_column) os << ",lambda_min";
  os << '\n';
}

void WriteTraceCsvRow(std::ostream& os, const TraceRecord& r, const TraceCsvOptions& opts) {
  os << r.k << ',';
  Put(os, r.f_value);
  os << ',';
  Put(os, r.dual_cert);
  os << ',';
  Put(os, r.cs_residual);
  os << ',';
  Put(os, r.eta);
  os << ',';
  Put(os, r.theta);
  os << ',';
  Put(os, opts.zero_wall_clock ? 0.0 : r.wall_ms);
  if (opts.lambda_column) {
    os << ',';
    Put(os, r.lambda_min);
  }
  os << '\n';
}

void WriteTraceCsv(std::ostream& os, const SolveTrace& trace,
                   const TraceCsvOptions& opts) {
  WriteTraceCsvHeader(os, opts);
  for (const TraceRecord& r : trace) WriteTraceCsvRow(os, r, opts);
}

}  // namespace moco
