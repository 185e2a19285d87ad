#ifndef MOCO_PROBLEMS_H_
#define MOCO_PROBLEMS_H_

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "moco/conic_program.h"
#include "moco/dct.h"
#include "moco/measurement_operator.h"
#include "moco/sdp_solver.h"

namespace moco {

// f(x, y) = (x - 1)^2 + y^2 over the nonnegative orthant of R^2. x* = (1, 0),
// f* = 0, L = 2.
ConicProgram ToyProgram();

// Infinite SNR disables noise.
inline constexpr double kNoNoise = std::numeric_limits<double>::infinity();

// clean + eps with Gaussian eps rescaled so that
// 10 log10(||clean||^2 / ||eps||^2) = snr_db exactly. Throws
// kDegenerateSignal for a zero signal.
Vector AddNoiseSnr(const Vector& clean, double snr_db, std::uint64_t seed);

// ---- symmetric matrix completion ----

struct MatCompInstance {
  int n = 0;
  std::uint64_t seed = 0;
  double snr_db = kNoNoise;
  std::vector<std::pair<int, int>> mask;  // (a, b) with a <= b
  Vector b;
  Matrix v_true;  // n x 3
};

// Observation probability outside the fully observed top-left block.
inline constexpr double kMatCompSampleRate = 0.1;
inline constexpr int kMatCompBlock = 10;
inline constexpr int kMatCompRank = 3;

MatCompInstance BuildMatCompInstance(int n, std::uint64_t seed, double snr_db);

struct MatCompProblem {
  MatCompInstance instance;
  std::shared_ptr<const EntrySamplingOperator> op;
  sdp::SdpObjective objective;  // f(y) = 0.5 ||y||^2, gamma = 0
};

MatCompProblem MakeMatCompProblem(MatCompInstance instance);
MatCompProblem BuildMatComp(int n, std::uint64_t seed, double snr_db);

// ---- DCT-masked phase retrieval ----

struct PhaseInstance {
  int n = 0;
  int m = 0;
  std::uint64_t seed = 0;
  double snr_db = kNoNoise;
  double gamma = 0.0;
  Matrix sign_masks;  // n x m, entries +-1
  Vector b;           // length m n, block j holds (D S_j x)^2
  Vector x_true;
};

// Measurement vectors a_{jn+k} = S_j D^T e_k, so a_i^T x = (D S_j x)_k.
// G_i = a_i a_i^T is never formed. Holds FFTW scratch: not thread safe.
class PhaseOperator final : public MeasurementOperator {
 public:
  PhaseOperator(Matrix sign_masks, Vector z);

  int side() const override { return n_; }
  int size() const override { return n_ * m_; }
  const Vector& offset() const override { return z_; }

  void MatvecI(int i, const Vector& v, Vector& out) const override;
  void Gram(const Vector& v, Vector& out) const override;
  void AdjointApply(const Vector& a, const Vector& v, Vector& out) const override;

  // [D S_1 x; ...; D S_m x].
  Vector Measure(const Vector& x) const;

 private:
  int n_;
  int m_;
  Matrix masks_;
  Vector z_;
  std::unique_ptr<Dct> dct_;
  mutable Vector buf_in_;
  mutable Vector buf_out_;
};

PhaseInstance BuildPhaseInstance(const Vector& x_true, int m, double gamma,
                                 std::uint64_t seed, double snr_db);

struct PhaseProblem {
  PhaseInstance instance;
  std::shared_ptr<const PhaseOperator> op;
  sdp::SdpObjective objective;  // f(y) = ||y||^2 / (m n), trace penalty gamma
};

PhaseProblem MakePhaseProblem(PhaseInstance instance);
PhaseProblem BuildPhaseRetrieval(const Vector& x_true, int m, double gamma,
                                 std::uint64_t seed, double snr_db);

// Concatenation over masks of DCT(S_j x), length m n.
Vector DctMeasurementApply(const PhaseInstance& instance, const Vector& x);

// (1 / m) sum_i b_i, an estimate of ||x||^2 = tr(x x^T).
double PhaseTraceEstimate(const PhaseInstance& instance);

// Standard normal test signal.
Vector SyntheticSignal(int n, std::uint64_t seed);

// 8-bit binary PGM (P5). Pixels row-major, scaled to [0, 1].
struct PgmImage {
  int width = 0;
  int height = 0;
  Vector pixels;
};
PgmImage ReadPgm(const std::string& path);

}  // namespace moco

#endif  // MOCO_PROBLEMS_H_
