#include "freeprod/exact_matrix.hpp"

#include <sstream>

#include "freeprod/errors.hpp"

namespace freeprod {

std::string GaussianRational::str() const {
  if (im.is_zero()) return re.str();
  if (re.is_zero()) return im.str() + "i";
  return re.str() + (im.sign() > 0 ? "+" : "") + im.str() + "i";
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (im.is_zero() && o.im.is_zero()) {
    re *= o.re;
    return *this;
  }
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
  const Rational norm = b.re * b.re + b.im * b.im;
  if (norm.is_zero()) throw DomainError("division by zero complex rational");
  GaussianRational num = a * b.conj();
  return {num.re / norm, num.im / norm};
}

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = GaussianRational(1);
  return m;
}

ExactMatrix ExactMatrix::unit(std::size_t n, std::size_t a, std::size_t b) {
  if (a < 1 || b < 1 || a > n || b > n) {
    throw IndexError("matrix unit e" + std::to_string(a) + std::to_string(b) + " outside M_" +
                     std::to_string(n));
  }
  ExactMatrix m(n, n);
  m(a - 1, b - 1) = GaussianRational(1);
  return m;
}

ExactMatrix ExactMatrix::diagonal(const std::vector<GaussianRational>& entries) {
  ExactMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

ExactMatrix ExactMatrix::cyclic_shift(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, (i + 1) % n) = GaussianRational(1);
  return m;
}

GaussianRational ExactMatrix::trace() const {
  if (!is_square()) throw ShapeMismatchError("trace of a non-square matrix");
  GaussianRational t;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

GaussianRational ExactMatrix::normalized_trace() const {
  GaussianRational t = trace();
  const Rational inv(1, static_cast<std::int64_t>(rows_));
  return {t.re * inv, t.im * inv};
}

ExactMatrix ExactMatrix::adjoint() const {
  ExactMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c).conj();
  }
  return m;
}

bool ExactMatrix::is_zero() const {
  for (const auto& x : data_) {
    if (!x.is_zero()) return false;
  }
  return true;
}

bool ExactMatrix::is_scalar_multiple_of_identity() const {
  if (!is_square()) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (r == c ? !((*this)(r, c) == (*this)(0, 0)) : !(*this)(r, c).is_zero()) return false;
    }
  }
  return true;
}

ExactMatrix& ExactMatrix::operator+=(const ExactMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeMismatchError("matrix sum shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

ExactMatrix& ExactMatrix::operator-=(const ExactMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeMismatchError("matrix difference shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

ExactMatrix& ExactMatrix::operator*=(const GaussianRational& s) {
  for (auto& x : data_) x *= s;
  return *this;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols_ != b.rows_) throw ShapeMismatchError("matrix product shape mismatch");
  ExactMatrix m(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const GaussianRational& x = a(r, k);
      if (x.is_zero()) continue;
      for (std::size_t c = 0; c < b.cols_; ++c) {
        const GaussianRational& y = b(k, c);
        if (!y.is_zero()) m(r, c) += x * y;
      }
    }
  }
  return m;
}

std::string ExactMatrix::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << ';';
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) os << ',';
      os << (*this)(r, c).str();
    }
  }
  os << ']';
  return os.str();
}

ExactMatrix power(const ExactMatrix& m, unsigned exponent) {
  if (!m.is_square()) throw ShapeMismatchError("power of a non-square matrix");
  ExactMatrix result = ExactMatrix::identity(m.rows());
  ExactMatrix base = m;
  while (exponent) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1u;
    if (exponent) base = base * base;
  }
  return result;
}

}  // namespace freeprod
