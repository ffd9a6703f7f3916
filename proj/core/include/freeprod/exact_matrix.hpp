#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "freeprod/rational.hpp"

namespace freeprod {

/// Exact complex scalar with rational real and imaginary parts.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(std::int64_t r) : re(r) {}         // NOLINT(google-explicit-constructor)
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }
  GaussianRational conj() const { return {re, -im}; }
  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
  std::string str() const;

  GaussianRational operator-() const { return {-re, -im}; }
  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);
  friend bool operator==(const GaussianRational&, const GaussianRational&) = default;
};

/// Dense square-or-rectangular matrix over exact complex rationals, row major.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols);

  static ExactMatrix zero(std::size_t n) { return ExactMatrix(n, n); }
  static ExactMatrix identity(std::size_t n);
  /// e_{ab} with 1-based indices, as matrix units are usually written.
  static ExactMatrix unit(std::size_t n, std::size_t a, std::size_t b);
  static ExactMatrix diagonal(const std::vector<GaussianRational>& entries);
  /// Cyclic shift with ones at (i, i+1) and (n, 1); a trace-zero unitary for n >= 2.
  static ExactMatrix cyclic_shift(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  GaussianRational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const GaussianRational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  /// Sum of the diagonal (unnormalized).
  GaussianRational trace() const;
  /// Trace divided by the dimension, so that the identity has trace 1.
  GaussianRational normalized_trace() const;
  ExactMatrix adjoint() const;
  bool is_zero() const;
  bool is_scalar_multiple_of_identity() const;

  ExactMatrix& operator+=(const ExactMatrix& o);
  ExactMatrix& operator-=(const ExactMatrix& o);
  ExactMatrix& operator*=(const GaussianRational& s);
  friend ExactMatrix operator+(ExactMatrix a, const ExactMatrix& b) { return a += b; }
  friend ExactMatrix operator-(ExactMatrix a, const ExactMatrix& b) { return a -= b; }
  friend ExactMatrix operator*(ExactMatrix a, const GaussianRational& s) { return a *= s; }
  friend ExactMatrix operator*(const GaussianRational& s, ExactMatrix a) { return a *= s; }
  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GaussianRational> data_;
};

ExactMatrix power(const ExactMatrix& m, unsigned exponent);

}  // namespace freeprod
