#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "freeprod/algebra.hpp"
#include "freeprod/exact_matrix.hpp"
#include "freeprod/structure.hpp"

// Exact elements of one side of a free product and words made of them.

namespace freeprod {

/// Laurent polynomial sum_k c_k u^k in a Haar unitary u; the element type of a
/// diffuse summand. tau(u^k) = 0 for k != 0, so the normalized trace is c_0.
class HaarPoly {
 public:
  HaarPoly() = default;
  static HaarPoly constant(const GaussianRational& c);
  static HaarPoly monomial(int k, const GaussianRational& c = GaussianRational(1));

  const std::map<int, GaussianRational>& coeffs() const { return coeffs_; }
  GaussianRational coeff(int k) const;
  GaussianRational normalized_trace() const { return coeff(0); }
  bool is_zero() const { return coeffs_.empty(); }
  HaarPoly adjoint() const;
  std::string str() const;

  HaarPoly& operator+=(const HaarPoly& o);
  HaarPoly& operator-=(const HaarPoly& o);
  HaarPoly& operator*=(const GaussianRational& s);
  friend HaarPoly operator+(HaarPoly a, const HaarPoly& b) { return a += b; }
  friend HaarPoly operator-(HaarPoly a, const HaarPoly& b) { return a -= b; }
  friend HaarPoly operator*(HaarPoly a, const GaussianRational& s) { return a *= s; }
  friend HaarPoly operator*(const HaarPoly& a, const HaarPoly& b);
  friend bool operator==(const HaarPoly&, const HaarPoly&) = default;

 private:
  void add(int k, const GaussianRational& c);
  std::map<int, GaussianRational> coeffs_;  // no zero entries
};

/// An element of one side's algebra: one component per summand, an
/// ExactMatrix of the summand's size or a HaarPoly for the diffuse summand.
class SideElement {
 public:
  using Component = std::variant<ExactMatrix, HaarPoly>;

  SideElement() = default;
  explicit SideElement(std::vector<Component> parts) : parts_(std::move(parts)) {}

  static SideElement zero(const TracialAlgebra& a);
  static SideElement identity(const TracialAlgebra& a);
  static SideElement scalar(const TracialAlgebra& a, const GaussianRational& c);
  /// Support projection of summand `index` (1-based).
  static SideElement projection(const TracialAlgebra& a, int index);
  /// Matrix unit e_{ab} (1-based) inside matrix summand `index`.
  static SideElement matrix_unit(const TracialAlgebra& a, int index, int row, int col);
  /// Arbitrary component in summand `index`, zero elsewhere.
  static SideElement embed(const TracialAlgebra& a, int index, Component c);
  /// Direct sum of the cyclic shifts of each matrix summand and the Haar
  /// generator of the diffuse summand. A trace-zero unitary when no summand is 1x1.
  static SideElement canonical_unitary(const TracialAlgebra& a);

  const std::vector<Component>& parts() const { return parts_; }
  std::size_t size() const { return parts_.size(); }

  /// Throws ShapeMismatchError if the components do not fit `a`.
  void check_shape(const TracialAlgebra& a) const;
  /// tau(x) = sum_i alpha_i tr(x_i).
  GaussianRational trace(const TracialAlgebra& a) const;
  bool is_zero() const;
  SideElement adjoint() const;
  /// Integer power; negative exponents need x to be a normal partial
  /// isometry and use the adjoint.
  SideElement pow(int exponent) const;
  /// Canonical text form, used for memo keys and messages.
  std::string str() const;

  SideElement& operator+=(const SideElement& o);
  SideElement& operator-=(const SideElement& o);
  SideElement& operator*=(const GaussianRational& s);
  friend SideElement operator+(SideElement a, const SideElement& b) { return a += b; }
  friend SideElement operator-(SideElement a, const SideElement& b) { return a -= b; }
  friend SideElement operator*(SideElement a, const GaussianRational& s) { return a *= s; }
  friend SideElement operator*(const GaussianRational& s, SideElement a) { return a *= s; }
  friend SideElement operator*(const SideElement& a, const SideElement& b);
  friend bool operator==(const SideElement&, const SideElement&) = default;

 private:
  std::vector<Component> parts_;
};

struct Letter {
  Side side = Side::Left;
  SideElement element;
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Product of letters, read left to right. Adjacent letters of one side are
/// allowed; they are multiplied together before evaluation.
struct FreeWord {
  std::vector<Letter> letters;

  FreeWord& operator*=(const FreeWord& o);
  friend FreeWord operator*(FreeWord a, const FreeWord& b) { return a *= b; }
  friend bool operator==(const FreeWord&, const FreeWord&) = default;
  /// The word of adjoints in reverse order.
  FreeWord adjoint() const;
};

/// letter = centered + scalar * 1, with tau(centered) = 0.
struct CenteredForm {
  GaussianRational scalar;
  Letter centered;
};

CenteredForm center(const Letter& l, const TracialAlgebra& algebra);

}  // namespace freeprod
