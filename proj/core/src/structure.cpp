#include "freeprod/structure.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "freeprod/errors.hpp"

namespace freeprod {

namespace {

// alpha_i / n_i^2 + beta_j / m_j^2
Rational pair_load(const Summand& s, const Summand& t) {
  return s.weight / Rational(std::int64_t{s.n} * s.n) + t.weight / Rational(std::int64_t{t.n} * t.n);
}

ProjectionRef flipped(ProjectionRef p) { return {opposite(p.side), p.index}; }

}  // namespace

namespace detail {

std::vector<FullnessClaim> fullness_from_boundary(const TracialAlgebra& a, const TracialAlgebra& b,
                                                  const std::vector<BoundaryMap>& maps) {
  std::vector<FullnessClaim> claims;
  for (int i = 1; i <= static_cast<int>(a.size()); ++i) {
    if (!a.at(i).is_matrix()) continue;
    FullnessClaim c{{Side::Left, i}, {}};
    for (const auto& m : maps) {
      if (m.i != i) c.kernels.emplace_back(m.i, m.j);
    }
    claims.push_back(std::move(c));
  }
  for (int j = 1; j <= static_cast<int>(b.size()); ++j) {
    if (!b.at(j).is_matrix()) continue;
    FullnessClaim c{{Side::Right, j}, {}};
    for (const auto& m : maps) {
      if (m.j != j) c.kernels.emplace_back(m.i, m.j);
    }
    claims.push_back(std::move(c));
  }
  return claims;
}

std::vector<ProjectionRef> all_witnesses(const TracialAlgebra& a, const TracialAlgebra& b) {
  std::vector<ProjectionRef> w;
  for (int i = 1; i <= static_cast<int>(a.size()); ++i) w.push_back({Side::Left, i});
  for (int j = 1; j <= static_cast<int>(b.size()); ++j) w.push_back({Side::Right, j});
  return w;
}

void check_dimension_hypotheses(const TracialAlgebra& a, const TracialAlgebra& b) {
  const ExtendedDim da = ext_dim(a);
  const ExtendedDim db = ext_dim(b);
  const std::string dims = "(dim(A) = " + da.str() + ", dim(B) = " + db.str() + ")";
  if (!da.at_least(2)) throw DimensionHypothesisViolated("hypothesis dim(A) >= 2 violated " + dims);
  if (!db.at_least(2)) throw DimensionHypothesisViolated("hypothesis dim(B) >= 2 violated " + dims);
  if (!(da + db).at_least(5)) {
    throw DimensionHypothesisViolated(
        "hypothesis dim(A) + dim(B) >= 5 violated " + dims +
        ": (C (+) C) * (C (+) C) is the algebra generated by two free projections; "
        "use two_projection_structure (CLI: freeprod twoproj)");
  }
}

std::optional<Decomposition> degenerate_passthrough(const TracialAlgebra& a, const TracialAlgebra& b) {
  const bool a_trivial = ext_dim(a) == ExtendedDim::finite(1);
  const bool b_trivial = ext_dim(b) == ExtendedDim::finite(1);
  if (!a_trivial && !b_trivial) return std::nullopt;

  const TracialAlgebra& other = a_trivial ? b : a;
  const Side other_side = a_trivial ? Side::Right : Side::Left;
  Decomposition d;
  d.factor.weight = Rational(1);
  d.factor.unital = true;
  const bool single_matrix = other.size() == 1 && other.summands()[0].is_matrix();
  d.factor.simple = single_matrix;
  d.factor.unique_trace = single_matrix;
  if (auto k = other.diffuse_index()) d.factor.diffuse_witnesses.push_back({other_side, *k});
  d.passthrough = other;
  d.notes.push_back(
      "one side is C, so the free product is the other algebra, returned unchanged; "
      "this input is outside the hypotheses dim(A) >= 2, dim(B) >= 2");
  return d;
}

}  // namespace detail

void canonicalize(Decomposition& d) {
  auto by_pair = [](const auto& x, const auto& y) { return std::tie(x.i, x.j) < std::tie(y.i, y.j); };
  std::sort(d.plus_blocks.begin(), d.plus_blocks.end(), by_pair);
  std::sort(d.boundary_maps.begin(), d.boundary_maps.end(), by_pair);
  std::sort(d.factor.diffuse_witnesses.begin(), d.factor.diffuse_witnesses.end());
  d.factor.diffuse_witnesses.erase(
      std::unique(d.factor.diffuse_witnesses.begin(), d.factor.diffuse_witnesses.end()),
      d.factor.diffuse_witnesses.end());
  for (auto& c : d.fullness) std::sort(c.kernels.begin(), c.kernels.end());
  std::sort(d.fullness.begin(), d.fullness.end(),
            [](const FullnessClaim& x, const FullnessClaim& y) { return x.projection < y.projection; });
  std::sort(d.full_in_whole.begin(), d.full_in_whole.end());
}

bool same_structure(const Decomposition& a, const Decomposition& b) {
  return a.factor == b.factor && a.plus_blocks == b.plus_blocks && a.boundary_maps == b.boundary_maps &&
         a.kernel == b.kernel && a.fullness == b.fullness && a.passthrough == b.passthrough;
}

Decomposition swap_sides(const Decomposition& d) {
  Decomposition s = d;
  for (auto& blk : s.plus_blocks) std::swap(blk.i, blk.j);
  for (auto& m : s.boundary_maps) std::swap(m.i, m.j);
  for (auto& w : s.factor.diffuse_witnesses) w = flipped(w);
  for (auto& c : s.fullness) {
    c.projection = flipped(c.projection);
    for (auto& k : c.kernels) std::swap(k.first, k.second);
  }
  for (auto& p : s.full_in_whole) p = flipped(p);
  canonicalize(s);
  return s;
}

std::pair<std::vector<AtomBlock>, std::vector<AtomBlock>> classify_pairs(const TracialAlgebra& a,
                                                                         const TracialAlgebra& b) {
  std::vector<AtomBlock> plus;
  std::vector<AtomBlock> zero;
  const Rational one(1);
  for (int i = 1; i <= static_cast<int>(a.size()); ++i) {
    const Summand& s = a.at(i);
    if (!s.is_matrix()) continue;
    for (int j = 1; j <= static_cast<int>(b.size()); ++j) {
      const Summand& t = b.at(j);
      if (!t.is_matrix()) continue;
      const Rational load = pair_load(s, t);
      const int N = std::max(s.n, t.n);
      if (load > one) {
        plus.push_back({i, j, N, Rational(std::int64_t{N} * N) * (load - one), AtomClass::Plus});
      } else if (load == one) {
        zero.push_back({i, j, N, Rational(0), AtomClass::Zero});
      }
    }
  }
  return {std::move(plus), std::move(zero)};
}

Decomposition decompose(const TracialAlgebra& a, const TracialAlgebra& b) {
  if (auto d = detail::degenerate_passthrough(a, b)) return *d;
  detail::check_dimension_hypotheses(a, b);

  auto [plus, zero] = classify_pairs(a, b);

  Decomposition d;
  Rational gamma(1);
  for (const auto& blk : plus) gamma -= blk.gamma;
  d.plus_blocks = std::move(plus);
  for (const auto& z : zero) d.boundary_maps.push_back({z.i, z.j, z.N});

  d.factor.weight = gamma;
  d.factor.unital = true;
  d.factor.simple = d.boundary_maps.empty();
  d.factor.unique_trace = d.boundary_maps.empty();
  d.factor.diffuse_witnesses = detail::all_witnesses(a, b);
  if (!d.boundary_maps.empty()) d.kernel = KernelReport{true, false, true};
  d.fullness = detail::fullness_from_boundary(a, b, d.boundary_maps);
  canonicalize(d);
  return d;
}

VnDecomposition vn_decompose(const TracialAlgebra& a, const TracialAlgebra& b) {
  if (detail::degenerate_passthrough(a, b)) {
    throw DimensionHypothesisViolated(
        "hypotheses dim(A) >= 2 and dim(B) >= 2 violated: one side is C and the von Neumann "
        "free product is just the other algebra");
  }
  detail::check_dimension_hypotheses(a, b);
  VnDecomposition v;
  v.plus_blocks = classify_pairs(a, b).first;
  v.factor_weight = Rational(1);
  for (const auto& blk : v.plus_blocks) v.factor_weight -= blk.gamma;
  return v;
}

TwoProjectionStructure two_projection_structure(const Rational& alpha, const Rational& beta) {
  const Rational half(1, 2);
  if (!(alpha < Rational(1) && alpha >= beta && beta >= half)) {
    throw DomainError("two_projection_structure needs 1 > alpha >= beta >= 1/2, got alpha = " + alpha.str() +
                      ", beta = " + beta.str() + "; replace p or q by its complement first");
  }
  TwoProjectionStructure s;
  s.alpha = alpha;
  s.beta = beta;
  if (alpha > beta) {
    s.which = TwoProjectionCase::Distinct;
  } else if (alpha > half) {
    s.which = TwoProjectionCase::EqualAboveHalf;
  } else {
    s.which = TwoProjectionCase::Half;
  }
  s.atom_p_not_q = alpha - beta;
  const Rational meet = alpha + beta - Rational(1);
  s.atom_p_and_q = meet.sign() > 0 ? meet : Rational(0);

  // Edges of the atomless part of the spectral measure of pqp.
  const double a = alpha.to_double();
  const double b = beta.to_double();
  const double center = a + b - 2.0 * a * b;
  const double radius = 2.0 * std::sqrt(a * b * (1.0 - a) * (1.0 - b));
  s.support_lo = std::max(0.0, center - radius);
  s.support_hi = std::min(1.0, center + radius);
  return s;
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::Below: return "below";
    case Regime::At: return "at";
    case Regime::Above: return "above";
  }
  return "?";
}

std::string two_projection_case_name(TwoProjectionCase c) {
  switch (c) {
    case TwoProjectionCase::Distinct: return "distinct";
    case TwoProjectionCase::EqualAboveHalf: return "equal_above_half";
    case TwoProjectionCase::Half: return "half";
  }
  return "?";
}

}  // namespace freeprod
