#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "freeprod/element.hpp"

// Exact trace of words in the reduced free product (A, tau_A) * (B, tau_B).
//
// The evaluator multiplies adjacent letters of one side together (also
// around the end of the word, which is allowed because tau is a trace), then
// splits the leftmost letter with nonzero trace as centered + scalar and
// recurses. A word of centered letters from alternating sides has trace 0;
// that is the definition of freeness.

namespace freeprod {

/// Longest alternating word, after merging, that the evaluator accepts.
inline constexpr std::size_t kMaxWordLetters = 16;

class WordEvaluator {
 public:
  WordEvaluator(TracialAlgebra left, TracialAlgebra right, std::size_t max_letters = kMaxWordLetters);

  /// Throws ShapeMismatchError for letters that do not fit their side and
  /// DomainError if the merged word is longer than max_letters.
  GaussianRational trace(const FreeWord& w);

  const TracialAlgebra& algebra(Side s) const { return s == Side::Left ? left_ : right_; }
  std::size_t memo_size() const { return memo_.size(); }

 private:
  GaussianRational eval(std::vector<Letter> letters);

  TracialAlgebra left_;
  TracialAlgebra right_;
  std::size_t max_letters_;
  std::unordered_map<std::string, GaussianRational> memo_;
};

GaussianRational word_trace(const FreeWord& w, const TracialAlgebra& a, const TracialAlgebra& b);

/// Multiplies adjacent letters of one side, including the last and first
/// letters (cyclic rotation), so the result alternates cyclically.
std::vector<Letter> merge_letters(std::vector<Letter> letters);

/// Parses a word such as "L:p1 R:u^2*e11*u^-2 L:center(p2)".
///
/// Letters are separated by whitespace, each is `L:` or `R:` followed by an
/// expression in that side's algebra:
///   expr    := term (('+' | '-') term)*
///   term    := ['-'] factor ('*' factor)*
///   factor  := primary ['^' ['-'] int]
///   primary := number | 'p'<k> | 'e'<a><b>['@'<k>] | 'e(' a ',' b [',' k] ')'
///            | 'u'['@'<k>] | 'center(' expr ')' | '(' expr ')'
/// `number` is an integer or p/q; `p<k>` is the unit of summand k; `e<a><b>`
/// is a matrix unit of the first summand of size >= max(a, b) unless `@k`
/// names the summand; `u` is the canonical unitary (cyclic shift on each
/// matrix summand, the Haar generator on the diffuse one) and `u@k` its part
/// in summand k; `center(x)` is x - tau(x).
FreeWord parse_word(std::string_view text, const TracialAlgebra& a, const TracialAlgebra& b);
SideElement parse_element(std::string_view text, const TracialAlgebra& algebra);

/// "L:p1 R:p1" repeated k times, the word (pq)^k.
std::string pq_power_word(int k);

}  // namespace freeprod
