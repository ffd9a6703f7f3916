#include <gtest/gtest.h>

#include <numeric>

#include "freeprod/errors.hpp"
#include "freeprod/structure.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"

using namespace freeprod;
using proptest::Gen;

namespace {

constexpr int kCases = 1000;

// Rewrites a decomposition under index maps (1-based -> 1-based) and an
// optional exchange of sides, then sorts everything. Written independently
// of the library's own swap_sides.
Decomposition transformed(const Decomposition& d, const std::vector<int>& left_map, const std::vector<int>& right_map,
                          bool swap) {
  auto L = [&](int i) { return left_map[static_cast<std::size_t>(i - 1)]; };
  auto Rm = [&](int j) { return right_map[static_cast<std::size_t>(j - 1)]; };
  auto pair = [&](int i, int j) { return swap ? IndexPair{Rm(j), L(i)} : IndexPair{L(i), Rm(j)}; };
  auto ref = [&](ProjectionRef p) {
    const int idx = p.side == Side::Left ? L(p.index) : Rm(p.index);
    const Side s = swap ? opposite(p.side) : p.side;
    return ProjectionRef{s, idx};
  };

  Decomposition out = d;
  for (auto& b : out.plus_blocks) std::tie(b.i, b.j) = pair(b.i, b.j);
  for (auto& m : out.boundary_maps) std::tie(m.i, m.j) = pair(m.i, m.j);
  for (auto& w : out.factor.diffuse_witnesses) w = ref(w);
  for (auto& c : out.fullness) {
    c.projection = ref(c.projection);
    for (auto& k : c.kernels) k = pair(k.first, k.second);
    std::sort(c.kernels.begin(), c.kernels.end());
  }
  std::sort(out.plus_blocks.begin(), out.plus_blocks.end(),
            [](const AtomBlock& x, const AtomBlock& y) { return std::tie(x.i, x.j) < std::tie(y.i, y.j); });
  std::sort(out.boundary_maps.begin(), out.boundary_maps.end(),
            [](const BoundaryMap& x, const BoundaryMap& y) { return std::tie(x.i, x.j) < std::tie(y.i, y.j); });
  std::sort(out.factor.diffuse_witnesses.begin(), out.factor.diffuse_witnesses.end());
  std::sort(out.fullness.begin(), out.fullness.end(),
            [](const FullnessClaim& x, const FullnessClaim& y) { return x.projection < y.projection; });
  return out;
}

std::vector<int> identity_map(std::size_t n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  return v;
}

}  // namespace

TEST(Properties, WeightConservation) {
  Gen g(101);
  for (int t = 0; t < kCases; ++t) {
    const auto [a, b] = g.admissible_pair(4, 3, true);
    const auto d = decompose(a, b);
    Rational total = d.factor.weight;
    for (const auto& blk : d.plus_blocks) {
      EXPECT_GT(blk.gamma, Rational(0));
      total += blk.gamma;
    }
    ASSERT_EQ(total, Rational(1)) << describe(a) << " * " << describe(b);
    ASSERT_GT(d.factor.weight, Rational(0)) << describe(a) << " * " << describe(b);
  }
}

TEST(Properties, ClosedFormMatchesOracle) {
  Gen g(102);
  int boundary_seen = 0;
  for (int t = 0; t < kCases; ++t) {
    const auto [a, b] = g.admissible_pair(4, 3, true);
    const auto d = decompose(a, b);
    const auto e = proptest::expected_structure(a, b);
    ASSERT_EQ(d.plus_blocks.size(), e.plus.size());
    for (std::size_t k = 0; k < e.plus.size(); ++k) {
      EXPECT_EQ(d.plus_blocks[k].i, e.plus[k].i);
      EXPECT_EQ(d.plus_blocks[k].j, e.plus[k].j);
      EXPECT_EQ(d.plus_blocks[k].N, e.plus[k].N);
      EXPECT_EQ(d.plus_blocks[k].gamma, e.plus[k].gamma);
    }
    ASSERT_EQ(d.boundary_maps.size(), e.zero.size());
    for (std::size_t k = 0; k < e.zero.size(); ++k) {
      EXPECT_EQ(d.boundary_maps[k].i, e.zero[k].i);
      EXPECT_EQ(d.boundary_maps[k].j, e.zero[k].j);
      EXPECT_EQ(d.boundary_maps[k].target_size, e.zero[k].N);
    }
    EXPECT_EQ(d.factor.weight, e.factor_weight);
    EXPECT_EQ(d.factor.simple, e.zero.empty());
    EXPECT_EQ(d.factor.unique_trace, e.zero.empty());
    EXPECT_EQ(d.kernel.has_value(), !e.zero.empty());
    if (!e.zero.empty()) ++boundary_seen;
  }
  EXPECT_GT(boundary_seen, kCases / 50);
}

TEST(Properties, BoundaryPairsAgree) {
  // pairs built to sit exactly on load 1
  Gen g(110);
  for (int t = 0; t < kCases; ++t) {
    const auto [a, b] = g.boundary_pair();
    const auto d = decompose(a, b);
    ASSERT_FALSE(d.boundary_maps.empty()) << describe(a) << " * " << describe(b);
    ASSERT_TRUE(d.kernel.has_value());
    ASSERT_FALSE(d.factor.simple);
    ASSERT_EQ(decompose_by_induction(a, b), d) << describe(a) << " * " << describe(b);
    ASSERT_EQ(decompose(b, a), swap_sides(d));
  }
}

TEST(Properties, InductionAgreesWithClosedForm) {
  Gen g(103);
  for (int t = 0; t < kCases; ++t) {
    const auto [a, b] = g.admissible_pair(4, 3, true);
    Decomposition closed;
    Decomposition ind;
    ASSERT_NO_THROW(closed = decompose(a, b));
    try {
      ind = decompose_by_induction(a, b);
    } catch (const std::exception& e) {
      FAIL() << describe(a) << " * " << describe(b) << ": " << e.what();
    }
    ASSERT_EQ(ind.factor, closed.factor) << describe(a) << " * " << describe(b);
    ASSERT_EQ(ind.plus_blocks, closed.plus_blocks) << describe(a) << " * " << describe(b);
    ASSERT_EQ(ind.boundary_maps, closed.boundary_maps) << describe(a) << " * " << describe(b);
    ASSERT_EQ(ind.kernel, closed.kernel) << describe(a) << " * " << describe(b);
    ASSERT_EQ(ind.fullness, closed.fullness) << describe(a) << " * " << describe(b);
    ASSERT_EQ(ind, closed);
  }
}

TEST(Properties, InductionWithLargerMatrices) {
  Gen g(104);
  for (int t = 0; t < kCases; ++t) {
    const auto [a, b] = g.admissible_pair(5, 5, true);
    ASSERT_EQ(decompose_by_induction(a, b), decompose(a, b)) << describe(a) << " * " << describe(b);
  }
}

TEST(Properties, SideSymmetry) {
  Gen g(105);
  for (int t = 0; t < kCases; ++t) {
    const auto [a, b] = g.admissible_pair(4, 3, true);
    const auto ab = decompose(a, b);
    const auto ba = decompose(b, a);
    ASSERT_EQ(ba, transformed(ab, identity_map(a.size()), identity_map(b.size()), true))
        << describe(a) << " * " << describe(b);
    EXPECT_EQ(swap_sides(ab), ba);
    EXPECT_EQ(decompose_by_induction(b, a), ba);
  }
}

TEST(Properties, PermutationEquivariance) {
  Gen g(106);
  for (int t = 0; t < kCases; ++t) {
    const auto [a, b] = g.admissible_pair(4, 3, true);
    std::vector<int> pa(a.size());
    std::vector<int> pb(b.size());
    std::iota(pa.begin(), pa.end(), 0);
    std::iota(pb.begin(), pb.end(), 0);
    std::shuffle(pa.begin(), pa.end(), g.engine());
    std::shuffle(pb.begin(), pb.end(), g.engine());
    // old 1-based index -> new 1-based index
    std::vector<int> ma(a.size());
    std::vector<int> mb(b.size());
    for (std::size_t k = 0; k < pa.size(); ++k) ma[static_cast<std::size_t>(pa[k])] = static_cast<int>(k) + 1;
    for (std::size_t k = 0; k < pb.size(); ++k) mb[static_cast<std::size_t>(pb[k])] = static_cast<int>(k) + 1;
    const auto pa_alg = proptest::permuted(a, pa);
    const auto pb_alg = proptest::permuted(b, pb);
    const auto expected = transformed(decompose(a, b), ma, mb, false);
    ASSERT_EQ(decompose(pa_alg, pb_alg), expected) << describe(a) << " * " << describe(b);
    ASSERT_EQ(decompose_by_induction(pa_alg, pb_alg), expected) << describe(a) << " * " << describe(b);
  }
}

TEST(Properties, FullnessFollowsBoundary) {
  Gen g(107);
  for (int t = 0; t < kCases; ++t) {
    const auto [a, b] = g.admissible_pair(4, 3, true);
    const auto d = decompose(a, b);
    // one claim per matrix summand; diffuse summands carry none
    std::size_t matrices = 0;
    for (const auto* x : {&a, &b})
      for (const auto& s : x->summands()) matrices += s.is_matrix() ? 1 : 0;
    ASSERT_EQ(d.fullness.size(), matrices);
    for (const auto& c : d.fullness) {
      for (const auto& m : d.boundary_maps) {
        const int own = c.projection.side == Side::Left ? m.i : m.j;
        const bool listed = std::find(c.kernels.begin(), c.kernels.end(), IndexPair{m.i, m.j}) != c.kernels.end();
        // f p_i survives exactly the maps that do not send it to the unit
        EXPECT_EQ(listed, own != c.projection.index);
      }
    }
  }
}

TEST(Properties, CompressionKeepsTotalWeight) {
  Gen g(108);
  int rewrites = 0;
  for (int t = 0; t < kCases; ++t) {
    const auto [a, b] = g.admissible_pair(4, 3, false);
    for (int i = 1; i <= static_cast<int>(a.size()); ++i) {
      if (a.at(i).n < 2) continue;
      CompressedProduct c;
      try {
        c = compression_rewrite(a, b, i);
      } catch (const DimensionHypothesisViolated&) {
        continue;
      }
      ++rewrites;
      EXPECT_EQ(c.weight, a.at(i).weight);
      EXPECT_EQ(c.left.total_weight(), Rational(1));
      EXPECT_EQ(c.right.at(1).n, a.at(i).n);
      ASSERT_EQ(c.origin.size(), c.left.size());
    }
  }
  EXPECT_GT(rewrites, 50);
}

TEST(Properties, BlockWeightsMatchLinearAlgebra) {
  // gamma for a scalar against M_m, measured as a subspace dimension in C^K
  Gen g(109);
  std::mt19937_64 rng(109);
  const int K = 120;
  int checked = 0;
  for (int t = 0; t < 60; ++t) {
    const int m = g.uniform(1, 3);
    // weights with K * alpha and K * beta / m integers
    const int p = g.uniform(1, K - 1);
    const int q = m * g.uniform(1, K / m);
    const Rational alpha(p, K);
    const Rational beta(q, K);
    std::vector<Summand> left{Summand::matrix(1, alpha)};
    if (p < K) left.push_back(Summand::matrix(1, Rational(1) - alpha));
    std::vector<Summand> right{Summand::matrix(m, beta)};
    if (q < K) right.push_back(Summand::matrix(1, Rational(1) - beta));
    const auto a = mk_algebra(left);
    const auto b = mk_algebra(right);
    if (!(ext_dim(a) + ext_dim(b)).at_least(5) || !ext_dim(b).at_least(2)) continue;
    const auto d = decompose(a, b);
    double gamma = 0.0;
    for (const auto& blk : d.plus_blocks)
      if (blk.i == 1 && blk.j == 1) gamma = blk.gamma.to_double();
    EXPECT_NEAR(proptest::block_weight_by_rank(alpha, m, beta, K, rng), gamma, 1e-12)
        << "alpha = " << alpha << ", beta = " << beta << ", m = " << m;
    ++checked;
  }
  EXPECT_GT(checked, 30);
}
