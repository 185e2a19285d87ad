#include "moco/dct.h"

#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>

namespace moco {
namespace {

// FFTW's planner is not thread safe; execution on distinct plans is.
std::mutex& PlannerMutex() {
  static std::mutex mu;
  return mu;
}

}  // namespace

struct Dct::Impl {
  int n = 0;
  double* in = nullptr;
  double* out = nullptr;
  fftw_plan forward = nullptr;   // REDFT10: y_k = 2 sum_j x_j cos(pi (2j+1) k / 2n)
  fftw_plan backward = nullptr;  // REDFT01: x_j = y_0 + 2 sum_k y_k cos(pi (2j+1) k / 2n)
  double c0 = 0.0;
  double ck = 0.0;

  explicit Impl(int size) : n(size) {
    in = fftw_alloc_real(n);
    out = fftw_alloc_real(n);
    if (in == nullptr || out == nullptr) {
      fftw_free(in);
      fftw_free(out);
      throw std::bad_alloc();
    }
    std::lock_guard<std::mutex> lock(PlannerMutex());
    forward = fftw_plan_r2r_1d(n, in, out, FFTW_REDFT10, FFTW_ESTIMATE);
    backward = fftw_plan_r2r_1d(n, in, out, FFTW_REDFT01, FFTW_ESTIMATE);
    c0 = std::sqrt(1.0 / n);
    ck = std::sqrt(2.0 / n);
  }

  ~Impl() {
    {
      std::lock_guard<std::mutex> lock(PlannerMutex());
      if (forward) fftw_destroy_plan(forward);
      if (backward) fftw_destroy_plan(backward);
    }
    fftw_free(in);
    fftw_free(out);
  }
};

Dct::Dct(int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "DCT length must be >= 1");
  impl_ = std::make_unique<Impl>(n);
}

Dct::~Dct() = default;
Dct::Dct(Dct&&) noexcept = default;
Dct& Dct::operator=(Dct&&) noexcept = default;

int Dct::size() const { return impl_->n; }

void Dct::Forward(const Vector& in, Vector& out) {
  Impl& p = *impl_;
  if (in.size() != p.n) throw Error(ErrorCode::kInvalidArgument, "DCT input length mismatch");
  std::copy(in.data(), in.data() + p.n, p.in);
  fftw_execute(p.forward);
  out.resize(p.n);
  out[0] = 0.5 * p.c0 * p.out[0];
  for (int k = 1; k < p.n; ++k) out[k] = 0.5 * p.ck * p.out[k];
}

void Dct::Inverse(const Vector& in, Vector& out) {
  Impl& p = *impl_;
  if (in.size() != p.n) throw Error(ErrorCode::kInvalidArgument, "DCT input length mismatch");
  p.in[0] = p.c0 * in[0];
  for (int k = 1; k < p.n; ++k) p.in[k] = 0.5 * p.ck * in[k];
  fftw_execute(p.backward);
  out.resize(p.n);
  std::copy(p.out, p.out + p.n, out.data());
}

Matrix DctMatrix(int n) {
  Matrix d(n, n);
  for (int k = 0; k < n; ++k) {
    double c = k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
    for (int j = 0; j < n; ++j) {
      d(k, j) = c * std::cos(std::numbers::pi * (2 * j + 1) * k / (2.0 * n));
    }
  }
  return d;
}

}  // namespace moco
