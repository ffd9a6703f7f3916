#include <gtest/gtest.h>

#include <cmath>

#include "freeprod/errors.hpp"
#include "freeprod/free_moments.hpp"
#include "freeprod/json_io.hpp"
#include "freeprod/matrix_model.hpp"
#include "freeprod/monte_carlo.hpp"
#include "freeprod/rng.hpp"
#include "support/generators.hpp"

using namespace freeprod;

namespace {

TracialAlgebra alg(std::initializer_list<std::pair<int, const char*>> spec) {
  std::vector<Summand> s;
  for (auto [n, w] : spec) s.push_back(Summand::matrix(n, Rational::parse(w)));
  return mk_algebra(std::move(s));
}

CMatrix coordinate_projection(int N, int r) {
  CMatrix P = CMatrix::Zero(N, N);
  for (int k = 0; k < r; ++k) P(k, k) = 1.0;
  return P;
}

// Is there any d_i >= 1 with sum n_i d_i = N?
bool fillable(const TracialAlgebra& a, int N) {
  std::vector<bool> reach(static_cast<std::size_t>(N) + 1, false);
  reach[0] = true;
  for (const auto& s : a.summands()) {
    std::vector<bool> next(reach.size(), false);
    for (int f = 0; f <= N; ++f) {
      if (!reach[static_cast<std::size_t>(f)]) continue;
      for (int g = f + s.n; g <= N; g += s.n) next[static_cast<std::size_t>(g)] = true;
    }
    reach = next;
  }
  return reach[static_cast<std::size_t>(N)];
}

}  // namespace

TEST(Realize, ExactWhenDivisible) {
  const auto l = realize(alg({{1, "1/3"}, {2, "2/3"}}), 12);
  EXPECT_EQ(l.multiplicities, (std::vector<int>{4, 4}));
  EXPECT_EQ(l.offsets, (std::vector<int>{0, 4}));
  EXPECT_EQ(l.achieved_weights[1], Rational(2, 3));
}

TEST(Realize, RoundsAndFillsN) {
  proptest::Gen g(5);
  for (int t = 0; t < 200; ++t) {
    const auto a = g.algebra(4, 3, true);
    const int N = g.uniform(60, 200);
    if (!fillable(a, N)) {
      EXPECT_THROW(realize(a, N), AmbientTooSmall) << describe(a) << " N = " << N;
      continue;
    }
    const auto l = realize(a, N);
    int filled = 0;
    for (std::size_t k = 0; k < l.sizes.size(); ++k) {
      EXPECT_GE(l.multiplicities[k], 1);
      filled += l.sizes[k] * l.multiplicities[k];
      // rounding moves each weight by less than n_i / N
      const double err = std::abs(l.achieved_weights[k].to_double() - a.summands()[k].weight.to_double());
      EXPECT_LE(err, static_cast<double>(l.sizes[k] * 3) / N) << describe(a) << " N = " << N;
    }
    EXPECT_EQ(filled, N);
  }
}

TEST(Realize, AmbientTooSmall) {
  EXPECT_THROW(realize(alg({{1, "1/2"}, {1, "1/2"}}), 1), AmbientTooSmall);
  EXPECT_THROW(realize(alg({{2, "1"}}), 3), AmbientTooSmall);
  EXPECT_THROW(realize(alg({{1, "99/100"}, {1, "1/100"}}), 10), AmbientTooSmall);
}

TEST(Haar, UnitaryAndReproducible) {
  auto r1 = stream_rng(42, 3);
  auto r2 = stream_rng(42, 3);
  auto r3 = stream_rng(42, 4);
  const CMatrix U = haar_unitary(40, r1);
  EXPECT_LT((U.adjoint() * U - CMatrix::Identity(40, 40)).norm(), 1e-10);
  EXPECT_EQ(U, haar_unitary(40, r2));
  EXPECT_NE(U, haar_unitary(40, r3));
}

TEST(Haar, IsometryIsLeadingColumns) {
  auto rng = stream_rng(11, 0);
  const CMatrix W = haar_isometry(30, 12, rng);
  ASSERT_EQ(W.cols(), 12);
  EXPECT_LT((W.adjoint() * W - CMatrix::Identity(12, 12)).norm(), 1e-10);
  // same Ginibre draw, so the columns coincide with the full unitary's
  auto r1 = stream_rng(11, 1);
  auto r2 = stream_rng(11, 1);
  EXPECT_LT((haar_isometry(20, 20, r1) - haar_unitary(20, r2)).norm(), 1e-12);
  EXPECT_EQ(haar_isometry(5, 0, rng).cols(), 0);
  EXPECT_THROW(haar_isometry(5, 6, rng), DomainError);
}

TEST(Haar, MomentsOfEntries) {
  // E|U_11|^2 = 1/N
  auto rng = stream_rng(1, 0);
  const int N = 8;
  double acc = 0;
  const int reps = 4000;
  for (int k = 0; k < reps; ++k) acc += std::norm(haar_unitary(N, rng)(0, 0));
  EXPECT_NEAR(acc / reps, 1.0 / N, 0.01);
}

TEST(Dense, IsMultiplicativeAndTracial) {
  proptest::Gen g(6);
  for (int t = 0; t < 50; ++t) {
    const auto a = g.algebra(3, 3, true);
    const auto l = realize(a, 60);
    const auto x = g.element(a);
    const auto y = g.element(a);
    const CMatrix dx = dense(x, l);
    const CMatrix dy = dense(y, l);
    EXPECT_LT((dense(x * y, l) - dx * dy).norm(), 1e-9);
    EXPECT_LT((dense(x.adjoint(), l) - dx.adjoint()).norm(), 1e-9);
    CMatrix m = dx;
    multiply_right(m, y, l);
    EXPECT_LT((m - dx * dy).norm(), 1e-9);
    m = dy;
    multiply_left(x, l, m);
    EXPECT_LT((m - dx * dy).norm(), 1e-9);
  }
}

TEST(Dense, TraceMatchesExactWhenRealizedExactly) {
  const auto a = alg({{1, "1/4"}, {3, "3/4"}});
  const auto l = realize(a, 40);
  const auto x = parse_element("p1 + 2*e12@2 + 5*e33", a);
  EXPECT_NEAR(dense(x, l).trace().real() / 40, x.trace(a).re.to_double(), 1e-12);
}

TEST(IntersectionRank, GenericPositionLaw) {
  auto rng = stream_rng(7, 0);
  proptest::Gen g(7);
  for (int t = 0; t < 30; ++t) {
    const int N = 40;
    const int rp = g.uniform(1, N - 1);
    const int rq = g.uniform(1, N - 1);
    const CMatrix U = haar_unitary(N, rng);
    const CMatrix Q = U * coordinate_projection(N, rq) * U.adjoint();
    EXPECT_EQ(intersection_rank(coordinate_projection(N, rp), Q), std::max(0, rp + rq - N));
  }
  EXPECT_EQ(intersection_rank(coordinate_projection(5, 3), coordinate_projection(5, 4)), 3);
  EXPECT_THROW(intersection_rank(coordinate_projection(5, 3), coordinate_projection(4, 3)), ShapeMismatchError);
}

TEST(MonteCarlo, WordTraceCloseToExact) {
  const auto a = alg({{1, "1/2"}, {1, "1/2"}});
  const auto b = alg({{1, "1/3"}, {2, "2/3"}});
  MonteCarloOptions o{300, 6, 42, 1};
  std::vector<FreeWord> words;
  for (const char* w : {"L:p1 R:p1", "L:p1 R:e12@2 L:p2 R:e21@2", "L:p1 R:p2 L:p1 R:p2"})
    words.push_back(parse_word(w, a, b));
  const auto est = empirical_word_traces(a, b, words, o);
  for (std::size_t k = 0; k < words.size(); ++k) {
    const auto exact = word_trace(words[k], a, b).to_complex();
    EXPECT_LE(std::abs(est[k].mean - exact), 4 * est[k].std_error + 16.0 / o.N) << k;
  }
}

TEST(MonteCarlo, SharedPrefixesDoNotChangeValues) {
  // the same set of words in a different order shares different prefixes
  const auto a = alg({{1, "1/2"}, {1, "1/2"}});
  const auto b = alg({{1, "1/3"}, {2, "2/3"}});
  std::vector<FreeWord> words;
  for (const char* w : {"L:p1 R:p1", "L:p1 R:p1 L:p1 R:p1", "L:p1 R:p1 L:p2 R:e12@2", "R:p2 L:p1",
                        "L:p1 R:p1 L:p1 R:p1 L:p1 R:p1", "L:p1 R:p1 L:p1"})
    words.push_back(parse_word(w, a, b));
  std::vector<FreeWord> reversed(words.rbegin(), words.rend());
  const MonteCarloOptions o{90, 3, 5, 1};
  const auto fwd = empirical_word_traces(a, b, words, o);
  const auto back = empirical_word_traces(a, b, reversed, o);
  for (std::size_t k = 0; k < words.size(); ++k) {
    EXPECT_LT(std::abs(fwd[k].mean - back[words.size() - 1 - k].mean), 1e-10) << k;
  }
}

TEST(MonteCarlo, ThreadCountDoesNotChangeResult) {
  const auto a = alg({{1, "1/2"}, {1, "1/2"}});
  const auto w = parse_word("L:p1 R:p1 L:p1 R:p1", a, a);
  const auto one = empirical_word_trace(a, a, w, {120, 5, 9, 1});
  const auto two = empirical_word_trace(a, a, w, {120, 5, 9, 3});
  EXPECT_EQ(one.mean, two.mean);
  EXPECT_EQ(one.std_error, two.std_error);
}

TEST(MonteCarlo, OptionValidation) {
  const auto a = alg({{1, "1/2"}, {1, "1/2"}});
  const auto w = parse_word("L:p1 R:p1", a, a);
  EXPECT_THROW(empirical_word_trace(a, a, w, {100, 0, 1, 1}), DomainError);
  EXPECT_THROW(empirical_word_trace(a, a, w, {1, 2, 1, 1}), AmbientTooSmall);
}

TEST(Spectrum, AtomsAndSupport) {
  const auto s = two_projection_spectrum(Rational(7, 10), Rational(8, 10), {200, 4, 42, 1});
  EXPECT_EQ(s.eigenvalues.size(), 800u);
  EXPECT_EQ(s.achieved_alpha, Rational(7, 10));
  EXPECT_NEAR(s.atom1_mass, 0.5, 1e-12);
  EXPECT_NEAR(s.atom0_mass, 0.0, 1e-12);
  EXPECT_NEAR(s.atom1_mass + s.atom0_mass + s.continuous_mass, 0.7, 1e-12);
  EXPECT_GE(s.support_lo, 0.0);
  EXPECT_LE(s.support_hi, 1.0);
  EXPECT_TRUE(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()));
  const auto csv = spectrum_csv(s);
  EXPECT_EQ(csv.rfind("eigenvalue\n", 0), 0u);
  EXPECT_THROW(two_projection_spectrum(Rational(1), Rational(1, 2), {}), DomainError);
}

TEST(Spectrum, JsonRoundTrip) {
  const auto s = two_projection_spectrum(Rational(1, 2), Rational(1, 2), {50, 2, 3, 1});
  const auto back = spectrum_summary_from_json(spectrum_summary_to_json(s));
  EXPECT_EQ(back.N, s.N);
  EXPECT_EQ(back.trials, s.trials);
  EXPECT_EQ(back.seed, s.seed);
  EXPECT_EQ(back.achieved_alpha, s.achieved_alpha);
  EXPECT_DOUBLE_EQ(back.atom1_mass, s.atom1_mass);
  EXPECT_DOUBLE_EQ(back.support_hi, s.support_hi);
  EmpiricalTrace e{{0.25, -0.5}, 0.01, 100, 3};
  const auto eb = empirical_from_json(empirical_to_json(e));
  EXPECT_EQ(eb.mean, e.mean);
  EXPECT_EQ(eb.N, 100);
}
