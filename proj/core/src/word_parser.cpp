#include <algorithm>
#include <cctype>

#include "freeprod/errors.hpp"
#include "freeprod/free_moments.hpp"

namespace freeprod {

namespace {

class ExprParser {
 public:
  ExprParser(std::string_view text, const TracialAlgebra& a) : text_(text), a_(a) {}

  SideElement parse() {
    SideElement e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("in element '" + std::string(text_) + "' at position " + std::to_string(pos_) + ": " + msg);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool at_digit() const { return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])); }

  long integer() {
    skip_space();
    if (!at_digit()) fail("expected an integer");
    long v = 0;
    while (at_digit()) {
      v = v * 10 + (text_[pos_++] - '0');
      if (v > 1000000) fail("integer too large");
    }
    return v;
  }

  int single_digit() {
    if (!at_digit()) fail("expected a digit");
    return text_[pos_++] - '0';
  }

  SideElement expr() {
    SideElement e = term();
    while (true) {
      if (accept('+')) {
        e += term();
      } else if (accept('-')) {
        e -= term();
      } else {
        return e;
      }
    }
  }

  SideElement term() {
    const bool negate = accept('-');
    SideElement e = factor();
    while (accept('*')) e = e * factor();
    if (negate) e *= GaussianRational(-1);
    return e;
  }

  SideElement factor() {
    SideElement e = primary();
    if (accept('^')) {
      const bool neg = accept('-');
      const long k = integer();
      e = e.pow(neg ? -static_cast<int>(k) : static_cast<int>(k));
    }
    return e;
  }

  int summand_suffix(int fallback) {
    if (pos_ < text_.size() && text_[pos_] == '@') {
      ++pos_;
      return static_cast<int>(integer());
    }
    return fallback;
  }

  int matrix_summand_for(int a, int b) {
    for (int k = 1; k <= static_cast<int>(a_.size()); ++k) {
      const Summand& s = a_.at(k);
      if (s.is_matrix() && s.n >= std::max(a, b)) return k;
    }
    fail("no matrix summand is large enough for e" + std::to_string(a) + std::to_string(b));
  }

  SideElement primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const long num = integer();
      long den = 1;
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        den = integer();
        if (den == 0) fail("zero denominator");
      }
      return SideElement::scalar(a_, GaussianRational(Rational(num, den)));
    }
    if (accept('(')) {
      SideElement e = expr();
      expect(')');
      return e;
    }
    if (text_.substr(pos_, 7) == "center(") {
      pos_ += 7;
      SideElement e = expr();
      expect(')');
      return e - SideElement::identity(a_) * e.trace(a_);
    }
    ++pos_;
    try {
      switch (c) {
        case 'i':
          return SideElement::scalar(a_, GaussianRational(Rational(0), Rational(1)));
        case 'p':
          return SideElement::projection(a_, static_cast<int>(integer()));
        case 'u': {
          const int k = summand_suffix(0);
          SideElement u = SideElement::canonical_unitary(a_);
          if (k == 0) return u;
          a_.at(k);
          return SideElement::embed(a_, k, u.parts()[static_cast<std::size_t>(k - 1)]);
        }
        case 'e': {
          int r = 0;
          int col = 0;
          int k = 0;
          if (accept('(')) {
            r = static_cast<int>(integer());
            expect(',');
            col = static_cast<int>(integer());
            if (accept(',')) k = static_cast<int>(integer());
            expect(')');
          } else {
            r = single_digit();
            col = single_digit();
            k = summand_suffix(0);
          }
          if (k == 0) k = matrix_summand_for(r, col);
          return SideElement::matrix_unit(a_, k, r, col);
        }
        default:
          --pos_;
          fail(std::string("unknown symbol '") + c + "'");
      }
    } catch (const IndexError& e) {
      fail(e.what());
    } catch (const ShapeMismatchError& e) {
      fail(e.what());
    }
  }

  std::string_view text_;
  const TracialAlgebra& a_;
  std::size_t pos_ = 0;
};

}  // namespace

SideElement parse_element(std::string_view text, const TracialAlgebra& algebra) {
  return ExprParser(text, algebra).parse();
}

FreeWord parse_word(std::string_view text, const TracialAlgebra& a, const TracialAlgebra& b) {
  FreeWord w;
  std::size_t pos = 0;
  auto space = [&](std::size_t p) { return std::isspace(static_cast<unsigned char>(text[p])) != 0; };
  while (true) {
    while (pos < text.size() && space(pos)) ++pos;
    if (pos >= text.size()) break;
    if (pos + 1 >= text.size() || text[pos + 1] != ':' || (text[pos] != 'L' && text[pos] != 'R')) {
      throw ParseError("letter at position " + std::to_string(pos) + " must start with 'L:' or 'R:'");
    }
    const Side side = text[pos] == 'L' ? Side::Left : Side::Right;
    pos += 2;
    const std::size_t start = pos;
    int depth = 0;
    while (pos < text.size() && (depth > 0 || !space(pos))) {
      if (text[pos] == '(') ++depth;
      if (text[pos] == ')') --depth;
      ++pos;
    }
    if (depth != 0) throw ParseError("unbalanced parentheses in letter starting at " + std::to_string(start));
    const std::string_view body = text.substr(start, pos - start);
    if (body.empty()) throw ParseError("empty letter at position " + std::to_string(start));
    w.letters.push_back({side, parse_element(body, side == Side::Left ? a : b)});
  }
  return w;
}

}  // namespace freeprod
