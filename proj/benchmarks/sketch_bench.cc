#include <random>

#include <benchmark/benchmark.h>

#include "moco/sketch.h"

namespace moco {
namespace {

void BM_SketchUpdate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SketchState sk = MakeSketch(n, 3, 1);
  Vector q = Vector::Random(n).normalized();
  for (auto _ : state) {
    SketchUpdate(sk, 0.99, 0.01, q);
    benchmark::DoNotOptimize(sk.s.data());
  }
}
BENCHMARK(BM_SketchUpdate)->Arg(100)->Arg(2000)->Arg(20000);

void BM_SketchReconstruct(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SketchState sk = MakeSketch(n, 8, 1);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> normal;
  for (int i = 0; i < 5; ++i) {
    Vector q(n);
    for (auto& v : q) v = normal(rng);
    SketchUpdate(sk, 1.0, 1.0, q);
  }
  for (auto _ : state) benchmark::DoNotOptimize(SketchReconstruct(sk, 2).values.data());
}
BENCHMARK(BM_SketchReconstruct)->Arg(100)->Arg(2000);

}  // namespace
}  // namespace moco
