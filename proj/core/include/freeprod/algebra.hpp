#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "freeprod/exact_matrix.hpp"
#include "freeprod/rational.hpp"

// Finite-dimensional tracial C*-algebras, possibly with a diffuse summand.
//
// Convention used throughout the public API: summand indices that appear in
// reports, in decompositions, and as function arguments named `index` are
// 1-based, matching how the summands p_1, ..., p_k are usually written.
// Direct container access (`summands()[k]`) is 0-based.

namespace freeprod {

enum class SummandKind { Matrix, Diffuse };

struct Summand {
  SummandKind kind = SummandKind::Matrix;
  int n = 1;          // matrix size; always 1 for a diffuse summand
  std::string label;  // only meaningful for diffuse summands
  Rational weight;

  static Summand matrix(int n, Rational weight) { return {SummandKind::Matrix, n, {}, std::move(weight)}; }
  static Summand diffuse(std::string label, Rational weight) {
    return {SummandKind::Diffuse, 1, std::move(label), std::move(weight)};
  }

  bool is_matrix() const { return kind == SummandKind::Matrix; }
  bool is_diffuse() const { return kind == SummandKind::Diffuse; }
  bool is_scalar() const { return is_matrix() && n == 1; }

  friend bool operator==(const Summand&, const Summand&) = default;
};

/// Dimension that is either a nonnegative integer or infinite.
class ExtendedDim {
 public:
  static ExtendedDim finite(std::uint64_t d) { return ExtendedDim(d); }
  static ExtendedDim infinite() { return ExtendedDim(std::nullopt); }

  bool is_infinite() const { return !value_; }
  std::uint64_t value() const { return value_.value(); }
  bool at_least(std::uint64_t bound) const { return is_infinite() || *value_ >= bound; }
  std::string str() const { return is_infinite() ? "inf" : std::to_string(*value_); }

  friend ExtendedDim operator+(const ExtendedDim& a, const ExtendedDim& b) {
    if (a.is_infinite() || b.is_infinite()) return infinite();
    return finite(a.value() + b.value());
  }
  friend bool operator==(const ExtendedDim&, const ExtendedDim&) = default;

 private:
  explicit ExtendedDim(std::optional<std::uint64_t> v) : value_(v) {}
  std::optional<std::uint64_t> value_;
};

/// Weighted direct sum of matrix algebras and at most one diffuse summand.
/// Instances are only produced by mk_algebra, so they are always valid.
class TracialAlgebra {
 public:
  const std::vector<Summand>& summands() const { return summands_; }
  std::size_t size() const { return summands_.size(); }
  /// 1-based access.
  const Summand& at(int index) const;
  /// Notes produced during validation, e.g. merged diffuse summands.
  const std::vector<std::string>& warnings() const { return warnings_; }

  std::optional<int> diffuse_index() const;
  bool has_diffuse() const { return diffuse_index().has_value(); }
  bool all_scalar() const;  // every summand is a 1x1 matrix
  Rational total_weight() const;

  /// Structural equality; warnings are not compared.
  friend bool operator==(const TracialAlgebra& a, const TracialAlgebra& b) { return a.summands_ == b.summands_; }

 private:
  friend TracialAlgebra mk_algebra(std::vector<Summand> summands);
  std::vector<Summand> summands_;
  std::vector<std::string> warnings_;
};

/// Validates and normalizes a summand list. Several diffuse summands are
/// merged into the position of the first one, with a warning.
TracialAlgebra mk_algebra(std::vector<Summand> summands);

/// Sum of n_i^2 over matrix summands, or infinite if a diffuse summand exists.
ExtendedDim ext_dim(const TracialAlgebra& a);

/// alpha_i times the normalized matrix trace of `element` on matrix summand `index`.
GaussianRational summand_trace(const TracialAlgebra& a, int index, const ExactMatrix& element);

std::string describe(const TracialAlgebra& a);

}  // namespace freeprod
