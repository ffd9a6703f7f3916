#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "freeprod/free_moments.hpp"

// Exact checks of the freeness statements behind the scalars-times-matrix
// case, in the model (C^{a_1} + ... + C^{a_m}) * (M_n, tr_n) with u the
// cyclic shift in M_n and p_s the scalar projections on the left.
//
//   verify_lemma31      random alternating words omega of centered letters
//                       from the algebras C*(u^k p_1 u^-k, ..., u^k p_m u^-k)
//                       and the diagonal D (or D plus powers of u^l), and
//                       tau(omega u^r) == 0 for every admissible r
//   verify_corollary32  random products b of the generators u^k p_s u^-k and
//                       e_ii, and tau(b u^k) == 0 for 0 < k < n

namespace freeprod {

struct WordCheck {
  std::string word;  // human readable description of the sampled word
  int shift = 0;     // r in tau(omega u^r)
  GaussianRational value;
};

struct FreenessReport {
  std::string name;
  std::string unit = "words";
  int total = 0;
  int passed = 0;
  int evaluations = 0;             // number of traces computed
  std::vector<WordCheck> failures;  // nonzero traces
  std::vector<std::string> examples;  // a few sampled words

  bool all_zero() const { return total > 0 && passed == total; }
  /// "100/100 words: τ = 0"
  std::string summary() const;
};

FreenessReport verify_lemma31(int m, int n, const std::vector<Rational>& weights, std::optional<int> l, int samples,
                              int max_len, std::uint64_t seed);

FreenessReport verify_corollary32(int n, const std::vector<Rational>& weights, int spanning_words,
                                  std::uint64_t seed);

/// True iff moments[0] == 1 and moments[k] == 0 for 0 < |k| <= k_max.
/// Missing moments count as a failure.
bool haar_check(const std::map<int, GaussianRational>& moments, int k_max);

/// tau(x^k) for |k| <= k_max, computed inside x's own algebra.
std::map<int, GaussianRational> element_moments(const SideElement& x, const TracialAlgebra& a, int k_max);

}  // namespace freeprod
