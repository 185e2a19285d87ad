#ifndef MOCO_INSTANCE_IO_H_
#define MOCO_INSTANCE_IO_H_

#include <iosfwd>
#include <string>
#include <variant>

#include "moco/problems.h"

namespace moco {

// Instance container, little endian throughout:
//   "MOCOINST" | u32 version | u32 kind | u64 seed | f64 snr_db
//   matcomp: u64 n | u64 |mask| | (u64 a, u64 b)* | f64 b* | f64 V (n x 3, col-major)
//   phase:   u64 n | u64 m | f64 gamma | f64 masks (n x m, col-major) | f64 b* | f64 x*
inline constexpr std::uint32_t kInstanceFormatVersion = 1;

using Instance = std::variant<MatCompInstance, PhaseInstance>;

void WriteInstance(std::ostream& os, const Instance& instance);
Instance ReadInstance(std::istream& is);
void WriteInstanceFile(const std::string& path, const Instance& instance);
Instance ReadInstanceFile(const std::string& path);

}  // namespace moco

#endif  // MOCO_INSTANCE_IO_H_
