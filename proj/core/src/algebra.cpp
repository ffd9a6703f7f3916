#include "freeprod/algebra.hpp"

#include <sstream>

#include "freeprod/errors.hpp"

namespace freeprod {

const Summand& TracialAlgebra::at(int index) const {
  if (index < 1 || static_cast<std::size_t>(index) > summands_.size()) {
    throw IndexError("summand index " + std::to_string(index) + " out of range 1.." +
                     std::to_string(summands_.size()));
  }
  return summands_[static_cast<std::size_t>(index - 1)];
}

std::optional<int> TracialAlgebra::diffuse_index() const {
  for (std::size_t k = 0; k < summands_.size(); ++k) {
    if (summands_[k].is_diffuse()) return static_cast<int>(k + 1);
  }
  return std::nullopt;
}

bool TracialAlgebra::all_scalar() const {
  for (const auto& s : summands_) {
    if (!s.is_scalar()) return false;
  }
  return true;
}

Rational TracialAlgebra::total_weight() const {
  Rational sum;
  for (const auto& s : summands_) sum += s.weight;
  return sum;
}

TracialAlgebra mk_algebra(std::vector<Summand> summands) {
  if (summands.empty()) throw EmptyAlgebraError("algebra has no summands");

  TracialAlgebra a;
  std::optional<std::size_t> first_diffuse;
  for (auto& s : summands) {
    if (s.weight.sign() <= 0) {
      throw ZeroWeightError("summand weight must be positive, got " + s.weight.str());
    }
    if (s.is_matrix() && s.n < 1) {
      throw ShapeMismatchError("matrix summand size must be >= 1, got " + std::to_string(s.n));
    }
    if (s.is_diffuse()) {
      s.n = 1;
      if (first_diffuse) {
        Summand& target = a.summands_[*first_diffuse];
        a.warnings_.push_back("merged diffuse summand '" + s.label + "' (weight " + s.weight.str() +
                              ") into '" + target.label + "' at index " +
                              std::to_string(*first_diffuse + 1));
        target.weight += s.weight;
        continue;
      }
      first_diffuse = a.summands_.size();
    }
    a.summands_.push_back(std::move(s));
  }

  const Rational total = a.total_weight();
  if (total != Rational(1)) throw WeightSumError("summand weights sum to " + total.str() + ", expected 1");
  return a;
}

ExtendedDim ext_dim(const TracialAlgebra& a) {
  std::uint64_t d = 0;
  for (const auto& s : a.summands()) {
    if (s.is_diffuse()) return ExtendedDim::infinite();
    d += static_cast<std::uint64_t>(s.n) * static_cast<std::uint64_t>(s.n);
  }
  return ExtendedDim::finite(d);
}

GaussianRational summand_trace(const TracialAlgebra& a, int index, const ExactMatrix& element) {
  const Summand& s = a.at(index);
  if (s.is_diffuse()) {
    throw ShapeMismatchError("diffuse summand " + std::to_string(index) +
                             " only accepts Haar-polynomial elements");
  }
  if (!element.is_square() || element.rows() != static_cast<std::size_t>(s.n)) {
    throw ShapeMismatchError("element of size " + std::to_string(element.rows()) + "x" +
                             std::to_string(element.cols()) + " given for summand M_" + std::to_string(s.n));
  }
  return element.normalized_trace() * GaussianRational(s.weight);
}

std::string describe(const TracialAlgebra& a) {
  std::ostringstream os;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const Summand& s = a.summands()[k];
    if (k) os << " (+) ";
    if (s.is_diffuse()) {
      os << (s.label.empty() ? "D" : s.label) << "^{" << s.weight << "}";
    } else if (s.n == 1) {
      os << "C^{" << s.weight << "}";
    } else {
      os << "M" << s.n << "^{" << s.weight << "}";
    }
  }
  return os.str();
}

}  // namespace freeprod
