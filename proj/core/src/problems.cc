#include "moco/problems.h"

#include <cctype>
#include <cmath>
#include <fstream>
#include <random>

namespace moco {
namespace {

// Separate RNG stream for the noise so that the noiseless part of an
// instance does not depend on the SNR.
constexpr std::uint64_t kNoiseStream = 0x9e3779b97f4a7c15ULL;

}  // namespace

ConicProgram ToyProgram() {
  Matrix q = 2.0 * Matrix::Identity(2, 2);
  Vector b(2);
  b << 2.0, 0.0;
  ConicProgram p = MakeQuadraticProgram(q, b, 1.0, Cone::Orthant(2));
  p.smoothness = 2.0;
  return p;
}

Vector AddNoiseSnr(const Vector& clean, double snr_db, std::uint64_t seed) {
  const double power = clean.squaredNorm();
  if (!(power > 0.0)) throw Error(ErrorCode::kDegenerateSignal, "cannot add noise to a zero signal");
  if (std::isinf(snr_db) && snr_db > 0.0) return clean;
  if (!std::isfinite(snr_db)) throw Error(ErrorCode::kInvalidArgument, "SNR must be finite or +inf");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Vector eps(clean.size());
  for (Eigen::Index i = 0; i < eps.size(); ++i) eps[i] = normal(rng);
  double eps_norm = eps.norm();
  if (eps_norm == 0.0) throw Error(ErrorCode::kDegenerateSignal, "noise draw is zero");
  const double target = std::sqrt(power * std::pow(10.0, -snr_db / 10.0));
  return clean + (target / eps_norm) * eps;
}

MatCompInstance BuildMatCompInstance(int n, std::uint64_t seed, double snr_db) {
  if (n < kMatCompBlock) {
    throw Error(ErrorCode::kInvalidArgument, "matrix completion needs n >= 10");
  }
  MatCompInstance inst;
  inst.n = n;
  inst.seed = seed;
  inst.snr_db = snr_db;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  inst.v_true.resize(n, kMatCompRank);
  for (int c = 0; c < kMatCompRank; ++c) {
    for (int r = 0; r < n; ++r) inst.v_true(r, c) = normal(rng);
  }

  std::bernoulli_distribution coin(kMatCompSampleRate);
  std::vector<double> clean;
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      bool in_block = a < kMatCompBlock && b < kMatCompBlock;
      // Draw for every cell so the mask does not depend on the block layout.
      bool drawn = coin(rng);
      if (in_block || drawn) {
        inst.mask.emplace_back(a, b);
        clean.push_back(inst.v_true.row(a).dot(inst.v_true.row(b)));
      }
    }
  }
  Vector clean_v = Eigen::Map<Vector>(clean.data(), static_cast<Eigen::Index>(clean.size()));
  inst.b = AddNoiseSnr(clean_v, snr_db, seed ^ kNoiseStream);
  return inst;
}

MatCompProblem MakeMatCompProblem(MatCompInstance instance) {
  MatCompProblem p;
  p.op = std::make_shared<EntrySamplingOperator>(instance.n, instance.mask, instance.b);
  p.objective.f = sdp::ScaledSquaredNorm(1.0);
  p.objective.gamma = 0.0;
  p.instance = std::move(instance);
  return p;
}

MatCompProblem BuildMatComp(int n, std::uint64_t seed, double snr_db) {
  return MakeMatCompProblem(BuildMatCompInstance(n, seed, snr_db));
}

PhaseOperator::PhaseOperator(Matrix sign_masks, Vector z)
    : n_(static_cast<int>(sign_masks.rows())),
      m_(static_cast<int>(sign_masks.cols())),
      masks_(std::move(sign_masks)),
      z_(std::move(z)) {
  if (n_ < 1 || m_ < 1) throw Error(ErrorCode::kInvalidArgument, "phase operator needs n, m >= 1");
  if (z_.size() != static_cast<Eigen::Index>(n_) * m_) {
    throw Error(ErrorCode::kInvalidArgument, "phase offset must have length m n");
  }
  dct_ = std::make_unique<Dct>(n_);
  buf_in_.resize(n_);
  buf_out_.resize(n_);
}

void PhaseOperator::MatvecI(int i, const Vector& v, Vector& out) const {
  const int j = i / n_;
  const int k = i % n_;
  buf_in_.setZero();
  buf_in_[k] = 1.0;
  dct_->Inverse(buf_in_, buf_out_);
  Vector a = masks_.col(j).cwiseProduct(buf_out_);
  out = a * a.dot(v);
}

void PhaseOperator::Gram(const Vector& v, Vector& out) const {
  out.resize(size());
  for (int j = 0; j < m_; ++j) {
    buf_in_ = masks_.col(j).cwiseProduct(v);
    dct_->Forward(buf_in_, buf_out_);
    out.segment(static_cast<Eigen::Index>(j) * n_, n_) = buf_out_.cwiseAbs2();
  }
}

void PhaseOperator::AdjointApply(const Vector& a, const Vector& v, Vector& out) const {
  out = Vector::Zero(n_);
  for (int j = 0; j < m_; ++j) {
    buf_in_ = masks_.col(j).cwiseProduct(v);
    dct_->Forward(buf_in_, buf_out_);
    buf_in_ = a.segment(static_cast<Eigen::Index>(j) * n_, n_).cwiseProduct(buf_out_);
    dct_->Inverse(buf_in_, buf_out_);
    out += masks_.col(j).cwiseProduct(buf_out_);
  }
}

Vector PhaseOperator::Measure(const Vector& x) const {
  Vector out(size());
  for (int j = 0; j < m_; ++j) {
    buf_in_ = masks_.col(j).cwiseProduct(x);
    dct_->Forward(buf_in_, buf_out_);
    out.segment(static_cast<Eigen::Index>(j) * n_, n_) = buf_out_;
  }
  return out;
}

Vector DctMeasurementApply(const PhaseInstance& instance, const Vector& x) {
  if (x.size() != instance.n) throw Error(ErrorCode::kInvalidArgument, "signal length mismatch");
  Dct dct(instance.n);
  Vector out(static_cast<Eigen::Index>(instance.n) * instance.m);
  Vector tmp(instance.n);
  for (int j = 0; j < instance.m; ++j) {
    dct.Forward(instance.sign_masks.col(j).cwiseProduct(x), tmp);
    out.segment(static_cast<Eigen::Index>(j) * instance.n, instance.n) = tmp;
  }
  return out;
}

PhaseInstance BuildPhaseInstance(const Vector& x_true, int m, double gamma,
                                 std::uint64_t seed, double snr_db) {
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "phase retrieval needs m >= 1");
  if (gamma < 0.0) throw Error(ErrorCode::kInvalidArgument, "gamma must be >= 0");
  if (x_true.size() < 1) throw Error(ErrorCode::kInvalidArgument, "empty signal");
  PhaseInstance inst;
  inst.n = static_cast<int>(x_true.size());
  inst.m = m;
  inst.seed = seed;
  inst.snr_db = snr_db;
  inst.gamma = gamma;
  inst.x_true = x_true;

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  inst.sign_masks.resize(inst.n, m);
  for (int j = 0; j < m; ++j) {
    for (int r = 0; r < inst.n; ++r) inst.sign_masks(r, j) = coin(rng) ? 1.0 : -1.0;
  }
  Vector clean = DctMeasurementApply(inst, x_true).cwiseAbs2();
  inst.b = AddNoiseSnr(clean, snr_db, seed ^ kNoiseStream);
  return inst;
}

PhaseProblem MakePhaseProblem(PhaseInstance instance) {
  PhaseProblem p;
  p.op = std::make_shared<PhaseOperator>(instance.sign_masks, instance.b);
  const double mn = static_cast<double>(instance.m) * instance.n;
  p.objective.f = sdp::ScaledSquaredNorm(2.0 / mn);
  p.objective.gamma = instance.gamma;
  p.instance = std::move(instance);
  return p;
}

PhaseProblem BuildPhaseRetrieval(const Vector& x_true, int m, double gamma,
                                 std::uint64_t seed, double snr_db) {
  return MakePhaseProblem(BuildPhaseInstance(x_true, m, gamma, seed, snr_db));
}

double PhaseTraceEstimate(const PhaseInstance& instance) {
  return instance.b.sum() / instance.m;
}

Vector SyntheticSignal(int n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "signal length must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = normal(rng);
  return x;
}

namespace {

// Next whitespace-delimited header token, skipping '#' comments.
std::string PgmToken(std::istream& is) {
  std::string tok;
  int c;
  while ((c = is.get()) != EOF) {
    if (c == '#') {
      while ((c = is.get()) != EOF && c != '\n') {
      }
      if (!tok.empty()) break;
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  return tok;
}

int PgmInt(std::istream& is, const std::string& path) {
  std::string tok = PgmToken(is);
  try {
    size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size() || v <= 0) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kIo, "bad PGM header in " + path);
  }
}

}  // namespace

PgmImage ReadPgm(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorCode::kIo, "cannot open " + path);
  if (PgmToken(is) != "P5") throw Error(ErrorCode::kIo, path + " is not a binary PGM");
  PgmImage img;
  img.width = PgmInt(is, path);
  img.height = PgmInt(is, path);
  int maxval = PgmInt(is, path);
  if (maxval > 255) throw Error(ErrorCode::kIo, "only 8-bit PGM is supported");
  const long count = static_cast<long>(img.width) * img.height;
  std::vector<unsigned char> raw(static_cast<size_t>(count));
  is.read(reinterpret_cast<char*>(raw.data()), count);
  if (is.gcount() != count) throw Error(ErrorCode::kIo, "truncated PGM " + path);
  img.pixels.resize(count);
  for (long i = 0; i < count; ++i) img.pixels[i] = raw[i] / static_cast<double>(maxval);
  return img;
}

}  // namespace moco
