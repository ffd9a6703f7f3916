#include "freeprod/errors.hpp"
#include "freeprod/free_moments.hpp"

namespace freeprod {

std::vector<Letter> merge_letters(std::vector<Letter> letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (auto& l : letters) {
    if (!out.empty() && out.back().side == l.side) {
      out.back().element = out.back().element * l.element;
    } else {
      out.push_back(std::move(l));
    }
  }
  // tau(x w y) = tau(y x w), so the two ends may be merged as well.
  while (out.size() >= 2 && out.front().side == out.back().side) {
    out.front().element = out.back().element * out.front().element;
    out.pop_back();
  }
  return out;
}

WordEvaluator::WordEvaluator(TracialAlgebra left, TracialAlgebra right, std::size_t max_letters)
    : left_(std::move(left)), right_(std::move(right)), max_letters_(max_letters) {}

GaussianRational WordEvaluator::trace(const FreeWord& w) {
  for (const auto& l : w.letters) l.element.check_shape(algebra(l.side));
  std::vector<Letter> merged = merge_letters(w.letters);
  if (merged.size() > max_letters_) {
    throw DomainError("word has " + std::to_string(merged.size()) + " alternating letters, the evaluator is capped at " +
                      std::to_string(max_letters_));
  }
  return eval(std::move(merged));
}

GaussianRational WordEvaluator::eval(std::vector<Letter> letters) {
  letters = merge_letters(std::move(letters));
  if (letters.empty()) return GaussianRational(1);
  for (const auto& l : letters) {
    if (l.element.is_zero()) return GaussianRational();
  }
  if (letters.size() == 1) return letters[0].element.trace(algebra(letters[0].side));

  std::string key;
  for (const auto& l : letters) {
    key += l.side == Side::Left ? 'L' : 'R';
    key += l.element.str();
  }
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  GaussianRational result;
  for (std::size_t k = 0; k < letters.size(); ++k) {
    CenteredForm c = center(letters[k], algebra(letters[k].side));
    if (c.scalar.is_zero()) continue;
    // x = x° + tau(x): the x° term keeps the word shape, the scalar term drops
    // the letter and lets its neighbours merge.
    std::vector<Letter> dropped = letters;
    dropped.erase(dropped.begin() + static_cast<std::ptrdiff_t>(k));
    std::vector<Letter> kept = std::move(letters);
    kept[k] = std::move(c.centered);
    result = eval(std::move(kept)) + c.scalar * eval(std::move(dropped));
    memo_.emplace(std::move(key), result);
    return result;
  }
  // Every letter is centered and the sides alternate.
  memo_.emplace(std::move(key), result);
  return result;
}

GaussianRational word_trace(const FreeWord& w, const TracialAlgebra& a, const TracialAlgebra& b) {
  WordEvaluator ev(a, b);
  return ev.trace(w);
}

std::string pq_power_word(int k) {
  std::string w;
  for (int i = 0; i < k; ++i) w += (i ? " " : "") + std::string("L:p1 R:p1");
  return w;
}

}  // namespace freeprod
