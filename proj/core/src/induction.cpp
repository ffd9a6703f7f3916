#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "freeprod/errors.hpp"
#include "freeprod/structure.hpp"

// Induction on the number of matrix summands of size >= 2.
//
// Peel summand k of A (size n >= 2, weight alpha < 1): replace it by a scalar
// to get A1, compute B = A1 * B recursively, then look at the corner
// p_k (A * B) p_k = (p_k B p_k) * M_n. The corner p_k B p_k is a diffuse part
// plus the blocks of B sitting under p_k, and the case engines settle it.

namespace freeprod {

namespace {

// Largest index of a matrix summand with n >= 2, or 0.
int peel_index(const TracialAlgebra& a) {
  for (int k = static_cast<int>(a.size()); k >= 1; --k) {
    if (a.at(k).is_matrix() && a.at(k).n >= 2) return k;
  }
  return 0;
}

TracialAlgebra scalarize(const TracialAlgebra& a, int k) {
  std::vector<Summand> s = a.summands();
  s[static_cast<std::size_t>(k - 1)] = Summand::matrix(1, s[static_cast<std::size_t>(k - 1)].weight);
  return mk_algebra(std::move(s));
}

// Every matrix summand is 1x1 (or diffuse). Same formula with N = 1 and no
// dimension check, so (C + C) * (C + C) is allowed as an intermediate.
Decomposition base_case(const TracialAlgebra& a, const TracialAlgebra& b) {
  Decomposition d;
  auto [plus, zero] = classify_pairs(a, b);
  d.factor.weight = Rational(1);
  for (const auto& blk : plus) d.factor.weight -= blk.gamma;
  d.plus_blocks = std::move(plus);
  for (const auto& z : zero) d.boundary_maps.push_back({z.i, z.j, z.N});
  d.factor.unital = true;
  d.factor.simple = d.boundary_maps.empty();
  d.factor.unique_trace = d.boundary_maps.empty();
  d.factor.diffuse_witnesses = detail::all_witnesses(a, b);
  if (!d.boundary_maps.empty()) d.kernel = KernelReport{true, false, true};
  d.fullness = detail::fullness_from_boundary(a, b, d.boundary_maps);
  canonicalize(d);
  return d;
}

// Renames left indices: new index k becomes origin[k - 1].
Decomposition relabel_left(Decomposition d, const std::vector<int>& origin) {
  auto map = [&](int k) { return origin.at(static_cast<std::size_t>(k - 1)); };
  for (auto& blk : d.plus_blocks) blk.i = map(blk.i);
  for (auto& m : d.boundary_maps) m.i = map(m.i);
  for (auto& w : d.factor.diffuse_witnesses) {
    if (w.side == Side::Left) w.index = map(w.index);
  }
  for (auto& c : d.fullness) {
    if (c.projection.side == Side::Left) c.projection.index = map(c.projection.index);
    for (auto& k : c.kernels) k.first = map(k.first);
  }
  for (auto& p : d.full_in_whole) {
    if (p.side == Side::Left) p.index = map(p.index);
  }
  canonicalize(d);
  return d;
}

// Non-scalar summands in input order, then scalars ascending by weight.
std::vector<int> case_order(const TracialAlgebra& x) {
  std::vector<int> order(x.size());
  std::iota(order.begin(), order.end(), 1);
  std::stable_sort(order.begin(), order.end(), [&](int p, int q) {
    const Summand& s = x.at(p);
    const Summand& t = x.at(q);
    if (s.is_scalar() != t.is_scalar()) return !s.is_scalar();
    if (s.is_scalar()) return s.weight < t.weight;
    return false;
  });
  return order;
}

// A = M_n on its own: the product is a case-engine product with sides swapped.
Decomposition whole_matrix_case(int n, const TracialAlgebra& b) {
  const std::vector<int> order = case_order(b);
  std::vector<Summand> sorted;
  for (int j : order) sorted.push_back(b.at(j));
  const TracialAlgebra x = mk_algebra(sorted);

  Decomposition r;
  if (x.all_scalar()) {
    std::vector<Rational> w;
    for (const auto& s : x.summands()) w.push_back(s.weight);
    r = scalar_times_matrix(w, n);
  } else {
    r = mixed_with_matrix(x, n);
  }
  return swap_sides(relabel_left(std::move(r), order));
}

struct Compression {
  CompressedProduct product;
  Rational diffuse_weight;  // trace of the compressed factor part, unnormalized
};

// Corner p_k B p_k of an already computed B = A1 * B, where summand k of A1
// is a scalar of weight alpha.
Compression compress(const Decomposition& inner, const TracialAlgebra& a1, const TracialAlgebra& b, int k,
                     int n) {
  const Rational alpha = a1.at(k).weight;
  Rational w0 = alpha;
  std::vector<const AtomBlock*> under;
  for (const auto& blk : inner.plus_blocks) {
    if (blk.i == k) {
      w0 -= blk.gamma;
      under.push_back(&blk);
    }
  }
  if (w0.sign() <= 0) {
    throw std::logic_error("compressed factor part has weight " + w0.str() + " under p_" + std::to_string(k));
  }

  std::stable_sort(under.begin(), under.end(), [&](const AtomBlock* x, const AtomBlock* y) {
    const bool xs = b.at(x->j).n == 1;
    const bool ys = b.at(y->j).n == 1;
    if (xs != ys) return !xs;
    if (xs) return x->gamma < y->gamma;
    return false;
  });

  std::vector<Summand> left{Summand::diffuse("corner", w0 / alpha)};
  std::vector<std::optional<int>> origin{std::nullopt};
  for (const AtomBlock* blk : under) {
    // The block under p_k is M_{m_j}; its trace in the corner is gamma / alpha.
    left.push_back(Summand::matrix(b.at(blk->j).n, blk->gamma / alpha));
    origin.push_back(blk->j);
  }
  Compression c{{mk_algebra(std::move(left)), mk_algebra({Summand::matrix(n, Rational(1))}), alpha, std::move(origin)},
                w0};
  return c;
}

Decomposition induct(const TracialAlgebra& a, const TracialAlgebra& b);

Decomposition peel(const TracialAlgebra& a, const TracialAlgebra& b, int k) {
  const int n = a.at(k).n;
  const Rational alpha = a.at(k).weight;
  if (alpha == Rational(1)) return whole_matrix_case(n, b);

  const TracialAlgebra a1 = scalarize(a, k);
  const Decomposition inner = induct(a1, b);
  const Compression comp = compress(inner, a1, b, k, n);
  const CompressedProduct& cp = comp.product;
  const Decomposition corner = mixed_with_matrix(cp.left, n);

  Decomposition d;
  for (const auto& blk : inner.plus_blocks) {
    if (blk.i != k) d.plus_blocks.push_back(blk);
  }
  for (const auto& m : inner.boundary_maps) {
    if (m.i != k) d.boundary_maps.push_back(m);
  }
  auto origin_of = [&](int l) { return cp.origin.at(static_cast<std::size_t>(l - 1)); };
  for (const auto& blk : corner.plus_blocks) {
    const auto j = origin_of(blk.i);
    if (!j) throw std::logic_error("corner block sits on the compressed factor part");
    d.plus_blocks.push_back({k, *j, n, alpha * blk.gamma, AtomClass::Plus});
  }
  for (const auto& m : corner.boundary_maps) {
    const auto j = origin_of(m.i);
    if (!j) throw std::logic_error("corner boundary map sits on the compressed factor part");
    d.boundary_maps.push_back({k, *j, n});
  }

  // The factor part of A * B is the factor part of B outside p_k plus the
  // factor part of the corner.
  d.factor.weight = inner.factor.weight - comp.diffuse_weight + alpha * corner.factor.weight;
  d.factor.unital = true;
  d.factor.simple = d.boundary_maps.empty();
  d.factor.unique_trace = d.boundary_maps.empty();
  if (!d.boundary_maps.empty()) d.kernel = KernelReport{true, false, true};

  auto has = [](const std::vector<ProjectionRef>& v, ProjectionRef p) {
    return std::find(v.begin(), v.end(), p) != v.end();
  };
  const auto& cw = corner.factor.diffuse_witnesses;
  bool corner_all = true;
  for (int l = 1; l <= static_cast<int>(cp.left.size()); ++l) corner_all = corner_all && has(cw, {Side::Left, l});
  for (int i = 1; i <= static_cast<int>(a.size()); ++i) {
    const bool ok = i == k ? corner_all : has(inner.factor.diffuse_witnesses, {Side::Left, i});
    if (ok) d.factor.diffuse_witnesses.push_back({Side::Left, i});
  }
  for (int j = 1; j <= static_cast<int>(b.size()); ++j) {
    bool ok = has(inner.factor.diffuse_witnesses, {Side::Right, j});
    // Under p_k the piece f q_j p_k lives in the corner.
    for (int l = 1; l <= static_cast<int>(cp.left.size()); ++l) {
      if (origin_of(l) == j) ok = ok && has(cw, {Side::Left, l});
    }
    if (ok) d.factor.diffuse_witnesses.push_back({Side::Right, j});
  }

  d.fullness = detail::fullness_from_boundary(a, b, d.boundary_maps);
  canonicalize(d);
  return d;
}

Decomposition induct(const TracialAlgebra& a, const TracialAlgebra& b) {
  if (int k = peel_index(a)) return peel(a, b, k);
  if (peel_index(b)) return swap_sides(induct(b, a));
  return base_case(a, b);
}

}  // namespace

Decomposition decompose_by_induction(const TracialAlgebra& a, const TracialAlgebra& b) {
  if (auto d = detail::degenerate_passthrough(a, b)) return *d;
  detail::check_dimension_hypotheses(a, b);
  Decomposition d = induct(a, b);
  d.regime.reset();
  d.full_in_whole.clear();
  return d;
}

CompressedProduct compression_rewrite(const TracialAlgebra& a, const TracialAlgebra& b, int index) {
  const Summand& s = a.at(index);
  if (!s.is_matrix()) {
    throw IndexError("compression_rewrite needs a matrix summand, summand " + std::to_string(index) +
                     " is diffuse");
  }
  if (auto d = detail::degenerate_passthrough(a, b)) {
    throw DimensionHypothesisViolated("compression_rewrite needs dim(A) >= 2 and dim(B) >= 2");
  }
  detail::check_dimension_hypotheses(a, b);

  if (s.weight == Rational(1)) {
    // p_i = 1: the corner is the whole product and nothing changes.
    CompressedProduct cp{b, mk_algebra({Summand::matrix(s.n, Rational(1))}), s.weight, {}};
    for (int j = 1; j <= static_cast<int>(b.size()); ++j) cp.origin.push_back(j);
    return cp;
  }
  const TracialAlgebra a1 = scalarize(a, index);
  return compress(induct(a1, b), a1, b, index, s.n).product;
}

}  // namespace freeprod
