#pragma once

#include <stdexcept>
#include <string>

namespace freeprod {

enum class ErrorKind {
  WeightSum,
  ZeroWeight,
  EmptyAlgebra,
  ShapeMismatch,
  Index,
  DimensionHypothesis,
  Hypothesis,
  Domain,
  AmbientTooSmall,
  Parse,
};

/// Base of every error raised by the library. The kind is what callers
/// (notably the CLI exit-code mapping) switch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define FREEPROD_DEFINE_ERROR(Name, Kind)                                   \
  class Name : public Error {                                               \
   public:                                                                  \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  };

FREEPROD_DEFINE_ERROR(WeightSumError, WeightSum)
FREEPROD_DEFINE_ERROR(ZeroWeightError, ZeroWeight)
FREEPROD_DEFINE_ERROR(EmptyAlgebraError, EmptyAlgebra)
FREEPROD_DEFINE_ERROR(ShapeMismatchError, ShapeMismatch)
FREEPROD_DEFINE_ERROR(IndexError, Index)
FREEPROD_DEFINE_ERROR(DimensionHypothesisViolated, DimensionHypothesis)
FREEPROD_DEFINE_ERROR(HypothesisViolated, Hypothesis)
FREEPROD_DEFINE_ERROR(DomainError, Domain)
FREEPROD_DEFINE_ERROR(AmbientTooSmall, AmbientTooSmall)
FREEPROD_DEFINE_ERROR(ParseError, Parse)

#undef FREEPROD_DEFINE_ERROR

/// True for errors that signal an unmet mathematical hypothesis rather than
/// malformed input.
inline bool is_hypothesis_violation(ErrorKind kind) {
  return kind == ErrorKind::DimensionHypothesis || kind == ErrorKind::Hypothesis ||
         kind == ErrorKind::Domain;
}

}  // namespace freeprod
