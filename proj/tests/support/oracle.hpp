#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "freeprod/algebra.hpp"
#include "freeprod/exact_matrix.hpp"
#include "freeprod/structure.hpp"

// Reference implementations used only by the tests. None of them call into
// the structure engines.

namespace freeprod::proptest {

// ---------------------------------------------------------------------------
// Closed form, recomputed from scratch.

struct ExpectedPair {
  int i;
  int j;
  int N;
  Rational gamma;  // 0 for boundary pairs
};

struct Expected {
  std::vector<ExpectedPair> plus;
  std::vector<ExpectedPair> zero;
  Rational factor_weight;
};

inline Expected expected_structure(const TracialAlgebra& a, const TracialAlgebra& b) {
  Expected e;
  e.factor_weight = Rational(1);
  for (int i = 1; i <= static_cast<int>(a.size()); ++i) {
    for (int j = 1; j <= static_cast<int>(b.size()); ++j) {
      const Summand& x = a.at(i);
      const Summand& y = b.at(j);
      if (x.is_diffuse() || y.is_diffuse()) continue;
      // trace of a minimal projection on each side
      const Rational load = x.weight / Rational(x.n * x.n) + y.weight / Rational(y.n * y.n);
      const int N = std::max(x.n, y.n);
      if (load > Rational(1)) {
        const Rational g = Rational(N * N) * (load - Rational(1));
        e.plus.push_back({i, j, N, g});
        e.factor_weight -= g;
      } else if (load == Rational(1)) {
        e.zero.push_back({i, j, N, Rational(0)});
      }
    }
  }
  return e;
}

// ---------------------------------------------------------------------------
// Weight of the M_m block for a scalar summand p (trace alpha) on one side and
// a summand M_m (weight beta) on the other, measured by linear algebra in C^K.
// The right summand acts as M_m (x) 1_d on its range; the block is m times the
// dimension of {w in C^d : U (e_a (x) w) in ran P for all a}.

inline double block_weight_by_rank(const Rational& alpha, int m, const Rational& beta, int K, std::mt19937_64& rng) {
  using CM = Eigen::MatrixXcd;
  const int rp = static_cast<int>(std::llround(alpha.to_double() * K));
  const int d = static_cast<int>(std::llround(beta.to_double() * K / m));
  std::normal_distribution<double> g;
  CM G(K, K);
  for (int r = 0; r < K; ++r)
    for (int c = 0; c < K; ++c) G(r, c) = {g(rng), g(rng)};
  const CM U = Eigen::HouseholderQR<CM>(G).householderQ();
  // 1 - P for P the first rp coordinates
  CM stacked(static_cast<Eigen::Index>(m) * (K - rp), d);
  for (int a = 0; a < m; ++a) {
    // columns U e_{a*d + r}
    stacked.block(a * (K - rp), 0, K - rp, d) = U.block(rp, a * d, K - rp, d);
  }
  Eigen::JacobiSVD<CM> svd(stacked);
  const auto sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > 1e-8) ++rank;
  return static_cast<double>(m * (d - rank)) / K;
}

// ---------------------------------------------------------------------------
// Non-crossing partitions and free cumulants.

using Partition = std::vector<std::vector<int>>;

inline std::vector<Partition> all_partitions(int n) {
  std::vector<Partition> out;
  std::function<void(int, Partition&)> rec = [&](int k, Partition& p) {
    if (k == n) {
      out.push_back(p);
      return;
    }
    for (std::size_t b = 0; b < p.size(); ++b) {
      p[b].push_back(k);
      rec(k + 1, p);
      p[b].pop_back();
    }
    p.push_back({k});
    rec(k + 1, p);
    p.pop_back();
  };
  Partition p;
  rec(0, p);
  return out;
}

inline bool crossing(const Partition& p) {
  std::vector<int> block_of;
  int n = 0;
  for (const auto& b : p) n += static_cast<int>(b.size());
  block_of.assign(static_cast<std::size_t>(n), -1);
  for (std::size_t k = 0; k < p.size(); ++k)
    for (int x : p[k]) block_of[static_cast<std::size_t>(x)] = static_cast<int>(k);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        for (int d = c + 1; d < n; ++d) {
          const auto A = block_of[static_cast<std::size_t>(a)], B = block_of[static_cast<std::size_t>(b)];
          if (A == block_of[static_cast<std::size_t>(c)] && B == block_of[static_cast<std::size_t>(d)] && A != B)
            return true;
        }
  return false;
}

inline std::vector<Partition> nc_partitions(int n) {
  std::vector<Partition> out;
  for (auto& p : all_partitions(n))
    if (!crossing(p)) out.push_back(std::move(p));
  return out;
}

/// Free cumulants kappa_1..kappa_n of one variable from its moments m_1..m_n
/// (moments[k] = tau(x^k), moments[0] unused).
inline std::vector<GaussianRational> free_cumulants(const std::vector<GaussianRational>& moments) {
  const int n = static_cast<int>(moments.size()) - 1;
  std::vector<GaussianRational> kappa(static_cast<std::size_t>(n + 1));
  for (int k = 1; k <= n; ++k) {
    GaussianRational rest;
    for (const auto& p : nc_partitions(k)) {
      if (p.size() == 1) continue;
      GaussianRational prod(1);
      for (const auto& blk : p) prod *= kappa[blk.size()];
      rest += prod;
    }
    kappa[static_cast<std::size_t>(k)] = moments[static_cast<std::size_t>(k)] - rest;
  }
  return kappa;
}

/// tau((ab)^k) for a, b free, via
///   tau(a b a b ... a b) = sum over pi in NC(k) of kappa_pi[a] tau_{K(pi)}[b]
/// with the Kreweras complement found by brute force on the 2k interleaved
/// points a_1 b_1 ... a_k b_k.
inline GaussianRational alternating_moment(const std::vector<GaussianRational>& ma,
                                           const std::vector<GaussianRational>& mb, int k) {
  const auto kappa = free_cumulants(ma);
  const auto ncs = nc_partitions(k);
  GaussianRational total;
  for (const auto& pi : ncs) {
    // Kreweras: the sigma in NC(k) on the b points with |pi| + |sigma| = k + 1
    // and pi (on even points) joined with sigma (on odd points) non-crossing.
    const Partition* kreweras = nullptr;
    for (const auto& sigma : ncs) {
      if (pi.size() + sigma.size() != static_cast<std::size_t>(k + 1)) continue;
      Partition joint;
      for (const auto& blk : pi) {
        std::vector<int> v;
        for (int x : blk) v.push_back(2 * x);
        joint.push_back(v);
      }
      for (const auto& blk : sigma) {
        std::vector<int> v;
        for (int x : blk) v.push_back(2 * x + 1);
        joint.push_back(v);
      }
      if (!crossing(joint)) {
        kreweras = &sigma;
        break;
      }
    }
    GaussianRational term(1);
    for (const auto& blk : pi) term *= kappa[blk.size()];
    for (const auto& blk : *kreweras) term *= mb[blk.size()];
    total += term;
  }
  return total;
}

}  // namespace freeprod::proptest
