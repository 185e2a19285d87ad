#ifndef MOCO_DCT_H_
#define MOCO_DCT_H_

#include <memory>

#include "moco/types.h"

namespace moco {

// Orthonormal DCT-II of length n and its inverse (the orthonormal DCT-III),
// backed by FFTW plans. An instance owns scratch buffers, so it must not be
// used from two threads at once.
class Dct {
 public:
  explicit Dct(int n);
  ~Dct();
  Dct(const Dct&) = delete;
  Dct& operator=(const Dct&) = delete;
  Dct(Dct&&) noexcept;
  Dct& operator=(Dct&&) noexcept;

  int size() const;

  // out = D in.
  void Forward(const Vector& in, Vector& out);
  // out = D^T in.
  void Inverse(const Vector& in, Vector& out);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// The orthonormal DCT-II matrix, built entrywise. Reference for tests.
Matrix DctMatrix(int n);

}  // namespace moco

#endif  // MOCO_DCT_H_
