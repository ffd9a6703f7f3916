#include "freeprod/element.hpp"

#include <sstream>

#include "freeprod/errors.hpp"

namespace freeprod {

HaarPoly HaarPoly::constant(const GaussianRational& c) { return monomial(0, c); }

HaarPoly HaarPoly::monomial(int k, const GaussianRational& c) {
  HaarPoly p;
  p.add(k, c);
  return p;
}

void HaarPoly::add(int k, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = coeffs_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

GaussianRational HaarPoly::coeff(int k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? GaussianRational() : it->second;
}

HaarPoly HaarPoly::adjoint() const {
  HaarPoly p;
  for (const auto& [k, c] : coeffs_) p.add(-k, c.conj());
  return p;
}

std::string HaarPoly::str() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : coeffs_) {
    if (!first) os << " + ";
    first = false;
    os << '(' << c.str() << ")u^" << k;
  }
  return os.str();
}

HaarPoly& HaarPoly::operator+=(const HaarPoly& o) {
  for (const auto& [k, c] : o.coeffs_) add(k, c);
  return *this;
}

HaarPoly& HaarPoly::operator-=(const HaarPoly& o) {
  for (const auto& [k, c] : o.coeffs_) add(k, -c);
  return *this;
}

HaarPoly& HaarPoly::operator*=(const GaussianRational& s) {
  if (s.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [k, c] : coeffs_) c *= s;
  return *this;
}

HaarPoly operator*(const HaarPoly& a, const HaarPoly& b) {
  HaarPoly p;
  for (const auto& [k, c] : a.coeffs_) {
    for (const auto& [l, d] : b.coeffs_) p.add(k + l, c * d);
  }
  return p;
}

namespace {

SideElement::Component zero_component(const Summand& s) {
  if (s.is_diffuse()) return HaarPoly();
  return ExactMatrix::zero(static_cast<std::size_t>(s.n));
}

SideElement::Component identity_component(const Summand& s) {
  if (s.is_diffuse()) return HaarPoly::constant(GaussianRational(1));
  return ExactMatrix::identity(static_cast<std::size_t>(s.n));
}

bool component_is_zero(const SideElement::Component& c) {
  return std::visit([](const auto& x) { return x.is_zero(); }, c);
}

}  // namespace

SideElement SideElement::zero(const TracialAlgebra& a) {
  std::vector<Component> parts;
  for (const auto& s : a.summands()) parts.push_back(zero_component(s));
  return SideElement(std::move(parts));
}

SideElement SideElement::identity(const TracialAlgebra& a) {
  std::vector<Component> parts;
  for (const auto& s : a.summands()) parts.push_back(identity_component(s));
  return SideElement(std::move(parts));
}

SideElement SideElement::scalar(const TracialAlgebra& a, const GaussianRational& c) { return identity(a) * c; }

SideElement SideElement::embed(const TracialAlgebra& a, int index, Component c) {
  a.at(index);  // range check
  SideElement e = zero(a);
  e.parts_[static_cast<std::size_t>(index - 1)] = std::move(c);
  e.check_shape(a);
  return e;
}

SideElement SideElement::projection(const TracialAlgebra& a, int index) {
  return embed(a, index, identity_component(a.at(index)));
}

SideElement SideElement::matrix_unit(const TracialAlgebra& a, int index, int row, int col) {
  const Summand& s = a.at(index);
  if (!s.is_matrix()) {
    throw ShapeMismatchError("matrix unit requested in diffuse summand " + std::to_string(index));
  }
  return embed(a, index,
               ExactMatrix::unit(static_cast<std::size_t>(s.n), static_cast<std::size_t>(row),
                                 static_cast<std::size_t>(col)));
}

SideElement SideElement::canonical_unitary(const TracialAlgebra& a) {
  std::vector<Component> parts;
  for (const auto& s : a.summands()) {
    if (s.is_diffuse()) {
      parts.emplace_back(HaarPoly::monomial(1));
    } else {
      parts.emplace_back(ExactMatrix::cyclic_shift(static_cast<std::size_t>(s.n)));
    }
  }
  return SideElement(std::move(parts));
}

void SideElement::check_shape(const TracialAlgebra& a) const {
  if (parts_.size() != a.size()) {
    throw ShapeMismatchError("element has " + std::to_string(parts_.size()) + " components, algebra has " +
                             std::to_string(a.size()) + " summands");
  }
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    const Summand& s = a.summands()[k];
    if (s.is_diffuse()) {
      if (!std::holds_alternative<HaarPoly>(parts_[k])) {
        throw ShapeMismatchError("diffuse summand " + std::to_string(k + 1) + " needs a Haar polynomial");
      }
    } else {
      const auto* m = std::get_if<ExactMatrix>(&parts_[k]);
      if (!m || m->rows() != static_cast<std::size_t>(s.n) || m->cols() != static_cast<std::size_t>(s.n)) {
        throw ShapeMismatchError("summand " + std::to_string(k + 1) + " needs a " + std::to_string(s.n) + "x" +
                                 std::to_string(s.n) + " matrix");
      }
    }
  }
}

GaussianRational SideElement::trace(const TracialAlgebra& a) const {
  check_shape(a);
  GaussianRational t;
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    const GaussianRational local =
        std::visit([](const auto& x) { return x.normalized_trace(); }, parts_[k]);
    t += local * GaussianRational(a.summands()[k].weight);
  }
  return t;
}

bool SideElement::is_zero() const {
  for (const auto& c : parts_) {
    if (!component_is_zero(c)) return false;
  }
  return true;
}

SideElement SideElement::adjoint() const {
  std::vector<Component> parts;
  for (const auto& c : parts_) {
    parts.push_back(std::visit([](const auto& x) -> Component { return x.adjoint(); }, c));
  }
  return SideElement(std::move(parts));
}

SideElement SideElement::pow(int exponent) const {
  SideElement base = *this;
  if (exponent < 0) {
    const SideElement adj = adjoint();
    const SideElement left = *this * adj;
    if (!(left == adj * *this) || !(left * left == left)) {
      throw DomainError("negative power of an element that is not a normal partial isometry");
    }
    base = adj;
    exponent = -exponent;
  }
  // x^0 is the unit, also for partial isometries.
  std::vector<Component> unit;
  for (const auto& c : parts_) {
    if (std::holds_alternative<HaarPoly>(c)) {
      unit.emplace_back(HaarPoly::constant(GaussianRational(1)));
    } else {
      unit.emplace_back(ExactMatrix::identity(std::get<ExactMatrix>(c).rows()));
    }
  }
  SideElement result(std::move(unit));
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent) base = base * base;
  }
  return result;
}

std::string SideElement::str() const {
  std::string s = "<";
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    if (k) s += "|";
    s += std::visit([](const auto& x) { return x.str(); }, parts_[k]);
  }
  return s + ">";
}

SideElement& SideElement::operator+=(const SideElement& o) {
  if (parts_.size() != o.parts_.size()) throw ShapeMismatchError("sum of elements of different algebras");
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    if (parts_[k].index() != o.parts_[k].index()) throw ShapeMismatchError("component kinds differ");
    std::visit(
        [&](auto& x) {
          using T = std::decay_t<decltype(x)>;
          x += std::get<T>(o.parts_[k]);
        },
        parts_[k]);
  }
  return *this;
}

SideElement& SideElement::operator-=(const SideElement& o) { return *this += o * GaussianRational(-1); }

SideElement& SideElement::operator*=(const GaussianRational& s) {
  for (auto& c : parts_) {
    std::visit([&](auto& x) { x *= s; }, c);
  }
  return *this;
}

SideElement operator*(const SideElement& a, const SideElement& b) {
  if (a.parts_.size() != b.parts_.size()) throw ShapeMismatchError("product of elements of different algebras");
  std::vector<SideElement::Component> parts;
  parts.reserve(a.parts_.size());
  for (std::size_t k = 0; k < a.parts_.size(); ++k) {
    if (a.parts_[k].index() != b.parts_[k].index()) throw ShapeMismatchError("component kinds differ");
    parts.push_back(std::visit(
        [&](const auto& x) -> SideElement::Component {
          using T = std::decay_t<decltype(x)>;
          return x * std::get<T>(b.parts_[k]);
        },
        a.parts_[k]));
  }
  return SideElement(std::move(parts));
}

FreeWord& FreeWord::operator*=(const FreeWord& o) {
  letters.insert(letters.end(), o.letters.begin(), o.letters.end());
  return *this;
}

FreeWord FreeWord::adjoint() const {
  FreeWord w;
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) w.letters.push_back({it->side, it->element.adjoint()});
  return w;
}

CenteredForm center(const Letter& l, const TracialAlgebra& algebra) {
  const GaussianRational t = l.element.trace(algebra);
  return {t, {l.side, l.element - SideElement::identity(algebra) * t}};
}

}  // namespace freeprod
