#include <benchmark/benchmark.h>

#include "freeprod/matrix_model.hpp"
#include "freeprod/monte_carlo.hpp"
#include "freeprod/rng.hpp"

using namespace freeprod;

static void BM_HaarUnitary(benchmark::State& state) {
  auto rng = stream_rng(42, 0);
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(haar_unitary(N, rng));
}
BENCHMARK(BM_HaarUnitary)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_HaarIsometryHalf(benchmark::State& state) {
  auto rng = stream_rng(42, 0);
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(haar_isometry(N, N / 2, rng));
}
BENCHMARK(BM_HaarIsometryHalf)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_TwoProjectionSpectrum(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(two_projection_spectrum(Rational(1, 2), Rational(1, 2), {N, 1, 42, 1}));
  }
}
BENCHMARK(BM_TwoProjectionSpectrum)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
