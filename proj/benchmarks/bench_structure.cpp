#include <benchmark/benchmark.h>

#include "freeprod/structure.hpp"

using namespace freeprod;

namespace {

// k scalar summands of equal weight against M_2 plus k more
std::pair<TracialAlgebra, TracialAlgebra> ladder(int k) {
  std::vector<Summand> left;
  std::vector<Summand> right{Summand::matrix(2, Rational(1, 2))};
  for (int i = 0; i < k; ++i) {
    left.push_back(Summand::matrix(1 + i % 3, Rational(1, k)));
    right.push_back(Summand::matrix(1 + i % 2, Rational(1, 2 * k)));
  }
  return {mk_algebra(left), mk_algebra(right)};
}

}  // namespace

static void BM_DecomposeClosedForm(benchmark::State& state) {
  const auto [a, b] = ladder(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(decompose(a, b));
}
BENCHMARK(BM_DecomposeClosedForm)->Arg(2)->Arg(8)->Arg(32);

static void BM_DecomposeByInduction(benchmark::State& state) {
  const auto [a, b] = ladder(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(decompose_by_induction(a, b));
}
BENCHMARK(BM_DecomposeByInduction)->Arg(2)->Arg(8)->Arg(32);
