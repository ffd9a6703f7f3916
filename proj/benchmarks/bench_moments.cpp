#include <benchmark/benchmark.h>

#include <string>

#include "freeprod/free_moments.hpp"

using namespace freeprod;

static void BM_WordTracePqPower(benchmark::State& state) {
  const auto a = mk_algebra({Summand::matrix(1, Rational(1, 2)), Summand::matrix(1, Rational(1, 2))});
  const auto b = mk_algebra({Summand::matrix(1, Rational(1, 3)), Summand::matrix(2, Rational(2, 3))});
  std::string text;
  for (int k = 0; k < state.range(0); ++k) text += "L:p1 R:p1 ";
  const auto w = parse_word(text, a, b);
  for (auto _ : state) benchmark::DoNotOptimize(word_trace(w, a, b));
}
BENCHMARK(BM_WordTracePqPower)->DenseRange(1, 4);
