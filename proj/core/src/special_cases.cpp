#include <algorithm>

#include "freeprod/errors.hpp"
#include "freeprod/structure.hpp"

// Products X * (M_n, tr_n) where X is a sum of scalars, or a mixed algebra
// with a diffuse or large matrix summand followed by scalars. The only data
// that matters is the largest scalar weight alpha against 1 - 1/n^2.

namespace freeprod {

namespace {

void require_ascending_scalars(const TracialAlgebra& left) {
  std::optional<Rational> prev;
  for (const auto& s : left.summands()) {
    if (!s.is_scalar()) continue;
    if (prev && s.weight < *prev) {
      throw HypothesisViolated("scalar summands must be listed in ascending weight order (" + prev->str() +
                               " before " + s.weight.str() + ")");
    }
    prev = s.weight;
  }
}

Decomposition matrix_corner(const TracialAlgebra& left, int n) {
  const TracialAlgebra right = mk_algebra({Summand::matrix(n, Rational(1))});
  const Rational nn(std::int64_t{n} * n);

  // Largest scalar, last one on ties.
  int l = 0;
  for (int k = 1; k <= static_cast<int>(left.size()); ++k) {
    if (left.at(k).is_scalar() && (l == 0 || left.at(k).weight >= left.at(l).weight)) l = k;
  }

  Decomposition d;
  d.factor.unital = true;
  d.factor.diffuse_witnesses = detail::all_witnesses(left, right);
  d.factor.weight = Rational(1);
  Regime regime = Regime::Below;
  if (l != 0) {
    const Rational alpha = left.at(l).weight;
    const Rational threshold = Rational(1) - Rational(1) / nn;
    if (alpha > threshold) {
      regime = Regime::Above;
      const Rational block = nn * alpha - nn + Rational(1);
      d.plus_blocks.push_back({l, 1, n, block, AtomClass::Plus});
      d.factor.weight = nn - nn * alpha;
    } else if (alpha == threshold) {
      regime = Regime::At;
      d.boundary_maps.push_back({l, 1, n});
    }
    d.full_in_whole.push_back({Side::Left, l});
  }
  d.regime = regime;
  d.factor.simple = d.boundary_maps.empty();
  d.factor.unique_trace = d.boundary_maps.empty();
  if (!d.boundary_maps.empty()) d.kernel = KernelReport{true, false, true};
  d.fullness = detail::fullness_from_boundary(left, right, d.boundary_maps);
  canonicalize(d);
  return d;
}

}  // namespace

Decomposition scalar_times_matrix(const std::vector<Rational>& weights, int n) {
  if (n < 2) throw HypothesisViolated("scalar_times_matrix needs n >= 2, got " + std::to_string(n));
  if (weights.size() < 2) {
    throw HypothesisViolated("scalar_times_matrix needs at least two scalar summands, got " +
                             std::to_string(weights.size()));
  }
  Rational total;
  std::vector<Summand> summands;
  for (const auto& w : weights) {
    if (w.sign() <= 0) throw HypothesisViolated("scalar weights must be positive, got " + w.str());
    total += w;
    summands.push_back(Summand::matrix(1, w));
  }
  if (total != Rational(1)) throw HypothesisViolated("scalar weights sum to " + total.str() + ", expected 1");
  if (!std::is_sorted(weights.begin(), weights.end())) {
    throw HypothesisViolated("scalar weights must be in ascending order");
  }
  return matrix_corner(mk_algebra(std::move(summands)), n);
}

Decomposition mixed_with_matrix(const TracialAlgebra& left, int n) {
  if (n < 2) throw HypothesisViolated("mixed_with_matrix needs n >= 2, got " + std::to_string(n));
  const bool rich = std::any_of(left.summands().begin(), left.summands().end(),
                                [](const Summand& s) { return s.is_diffuse() || s.n >= 2; });
  if (!rich) {
    throw HypothesisViolated(
        "mixed_with_matrix needs a diffuse summand or a matrix summand of size >= 2 on the left; "
        "use scalar_times_matrix for a sum of scalars");
  }
  require_ascending_scalars(left);
  return matrix_corner(left, n);
}

}  // namespace freeprod
