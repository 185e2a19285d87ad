#include "moco/instance_io.h"

#include <cstring>
#include <fstream>

#include "binary_io.h"

namespace moco {
namespace {

constexpr char kMagic[8] = {'M', 'O', 'C', 'O', 'I', 'N', 'S', 'T'};
constexpr std::uint32_t kKindMatComp = 1;
constexpr std::uint32_t kKindPhase = 2;
// Refuse absurd dimensions from corrupt headers before allocating.
constexpr std::uint64_t kMaxEntries = std::uint64_t{1} << 32;

void PutDoubles(std::ostream& os, const double* p, Eigen::Index count) {
  for (Eigen::Index i = 0; i < count; ++i) internal::PutF64(os, p[i]);
}

void GetDoubles(std::istream& is, double* p, Eigen::Index count) {
  for (Eigen::Index i = 0; i < count; ++i) p[i] = internal::GetF64(is);
}

std::uint64_t GetDim(std::istream& is) {
  std::uint64_t v = internal::GetU64(is);
  if (v == 0 || v > kMaxEntries) throw Error(ErrorCode::kIo, "bad dimension in instance header");
  return v;
}

void WriteBody(std::ostream& os, const MatCompInstance& inst) {
  internal::PutU64(os, static_cast<std::uint64_t>(inst.n));
  internal::PutU64(os, inst.mask.size());
  for (const auto& [a, b] : inst.mask) {
    internal::PutU64(os, static_cast<std::uint64_t>(a));
    internal::PutU64(os, static_cast<std::uint64_t>(b));
  }
  PutDoubles(os, inst.b.data(), inst.b.size());
  PutDoubles(os, inst.v_true.data(), inst.v_true.size());
}

void WriteBody(std::ostream& os, const PhaseInstance& inst) {
  internal::PutU64(os, static_cast<std::uint64_t>(inst.n));
  internal::PutU64(os, static_cast<std::uint64_t>(inst.m));
  internal::PutF64(os, inst.gamma);
  PutDoubles(os, inst.sign_masks.data(), inst.sign_masks.size());
  PutDoubles(os, inst.b.data(), inst.b.size());
  PutDoubles(os, inst.x_true.data(), inst.x_true.size());
}

MatCompInstance ReadMatCompBody(std::istream& is) {
  MatCompInstance inst;
  std::uint64_t n = GetDim(is);
  std::uint64_t count = GetDim(is);
  if (count > n * (n + 1) / 2) throw Error(ErrorCode::kIo, "mask larger than the upper triangle");
  inst.n = static_cast<int>(n);
  inst.mask.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint64_t a = internal::GetU64(is);
    std::uint64_t b = internal::GetU64(is);
    if (a > b || b >= n) throw Error(ErrorCode::kIo, "mask entry out of range");
    inst.mask.emplace_back(static_cast<int>(a), static_cast<int>(b));
  }
  inst.b.resize(static_cast<Eigen::Index>(count));
  GetDoubles(is, inst.b.data(), inst.b.size());
  inst.v_true.resize(inst.n, kMatCompRank);
  GetDoubles(is, inst.v_true.data(), inst.v_true.size());
  return inst;
}

PhaseInstance ReadPhaseBody(std::istream& is) {
  PhaseInstance inst;
  std::uint64_t n = GetDim(is);
  std::uint64_t m = GetDim(is);
  if (n * m > kMaxEntries) throw Error(ErrorCode::kIo, "phase instance too large");
  inst.n = static_cast<int>(n);
  inst.m = static_cast<int>(m);
  inst.gamma = internal::GetF64(is);
  inst.sign_masks.resize(inst.n, inst.m);
  GetDoubles(is, inst.sign_masks.data(), inst.sign_masks.size());
  inst.b.resize(static_cast<Eigen::Index>(n * m));
  GetDoubles(is, inst.b.data(), inst.b.size());
  inst.x_true.resize(inst.n);
  GetDoubles(is, inst.x_true.data(), inst.x_true.size());
  return inst;
}

}  // namespace

void WriteInstance(std::ostream& os, const Instance& instance) {
  os.write(kMagic, sizeof(kMagic));
  internal::PutU32(os, kInstanceFormatVersion);
  std::visit(
      [&os](const auto& inst) {
        using T = std::decay_t<decltype(inst)>;
        internal::PutU32(os, std::is_same_v<T, MatCompInstance> ? kKindMatComp : kKindPhase);
        internal::PutU64(os, inst.seed);
        internal::PutF64(os, inst.snr_db);
        WriteBody(os, inst);
      },
      instance);
  if (!os) throw Error(ErrorCode::kIo, "failed writing instance");
}

Instance ReadInstance(std::istream& is) {
  char magic[sizeof(kMagic)];
  if (!is.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw Error(ErrorCode::kIo, "not an instance file");
  }
  std::uint32_t version = internal::GetU32(is);
  if (version != kInstanceFormatVersion) {
    throw Error(ErrorCode::kIo, "unsupported instance format version " + std::to_string(version));
  }
  std::uint32_t kind = internal::GetU32(is);
  std::uint64_t seed = internal::GetU64(is);
  double snr = internal::GetF64(is);
  if (kind == kKindMatComp) {
    MatCompInstance inst = ReadMatCompBody(is);
    inst.seed = seed;
    inst.snr_db = snr;
    return inst;
  }
  if (kind == kKindPhase) {
    PhaseInstance inst = ReadPhaseBody(is);
    inst.seed = seed;
    inst.snr_db = snr;
    return inst;
  }
  throw Error(ErrorCode::kIo, "unknown instance kind " + std::to_string(kind));
}

void WriteInstanceFile(const std::string& path, const Instance& instance) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::kIo, "cannot open " + path);
  WriteInstance(os, instance);
}

Instance ReadInstanceFile(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorCode::kIo, "cannot open " + path);
  return ReadInstance(is);
}

}  // namespace moco
