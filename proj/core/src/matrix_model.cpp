#include "freeprod/matrix_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "freeprod/errors.hpp"

namespace freeprod {

namespace {

using cd = std::complex<double>;

CMatrix to_dense(const ExactMatrix& x) {
  CMatrix m(static_cast<Eigen::Index>(x.rows()), static_cast<Eigen::Index>(x.cols()));
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t c = 0; c < x.cols(); ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = x(r, c).to_complex();
  }
  return m;
}

// Diagonal of a Haar polynomial realized on d points of the circle.
Eigen::VectorXcd haar_diagonal(const HaarPoly& p, int d) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
  for (const auto& [k, c] : p.coeffs()) {
    const cd coeff = c.to_complex();
    for (int r = 0; r < d; ++r) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) * r / d;
      v(r) += coeff * cd(std::cos(angle), std::sin(angle));
    }
  }
  return v;
}

void check_layout(const SideElement& x, const BlockLayout& layout) {
  if (x.size() != layout.sizes.size()) {
    throw ShapeMismatchError("element has " + std::to_string(x.size()) + " components, layout has " +
                             std::to_string(layout.sizes.size()));
  }
}

}  // namespace

namespace {

// Largest remainder can get stuck with a leftover smaller than every block
// (e.g. 1 left over with blocks of size 2 and 3). Search multiplicities near
// the targets with sum n_i d_i = N exactly, minimizing sum |n_i d_i - alpha_i N|.
bool exact_fill(const TracialAlgebra& a, int N, std::vector<int>& mult) {
  const std::size_t k = a.size();
  int window = 1;
  for (const auto& s : a.summands()) window = std::max(window, s.n + 1);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // cost[i][f]: best cost for the first i summands filling f coordinates
  std::vector<std::vector<double>> cost(k + 1, std::vector<double>(static_cast<std::size_t>(N) + 1, kInf));
  std::vector<std::vector<int>> pick(k + 1, std::vector<int>(static_cast<std::size_t>(N) + 1, 0));
  cost[0][0] = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const Summand& s = a.summands()[i];
    const double target = s.weight.to_double() * N;
    const int centre = static_cast<int>(target / s.n);
    for (int f = 0; f <= N; ++f) {
      if (cost[i][static_cast<std::size_t>(f)] == kInf) continue;
      for (int d = std::max(1, centre - window); d <= centre + window; ++d) {
        const int g = f + d * s.n;
        if (g > N) break;
        const double c = cost[i][static_cast<std::size_t>(f)] + std::abs(d * s.n - target);
        if (c < cost[i + 1][static_cast<std::size_t>(g)]) {
          cost[i + 1][static_cast<std::size_t>(g)] = c;
          pick[i + 1][static_cast<std::size_t>(g)] = d;
        }
      }
    }
  }
  if (cost[k][static_cast<std::size_t>(N)] == kInf) return false;
  int f = N;
  for (std::size_t i = k; i > 0; --i) {
    const int d = pick[i][static_cast<std::size_t>(f)];
    mult[i - 1] = d;
    f -= d * a.summands()[i - 1].n;
  }
  return true;
}

}  // namespace

BlockLayout realize(const TracialAlgebra& a, int N) {
  if (N < 1) throw AmbientTooSmall("ambient dimension must be positive, got " + std::to_string(N));
  BlockLayout L;
  L.N = N;
  const std::size_t k = a.size();
  std::vector<Rational> remainder(k);
  int filled = 0;
  for (const auto& s : a.summands()) {
    const Rational target = s.weight * Rational(N) / Rational(s.n);
    // floor of a positive rational
    mpz_class q = target.raw().get_num() / target.raw().get_den();
    const int d = static_cast<int>(q.get_si());
    L.sizes.push_back(s.n);
    L.multiplicities.push_back(d);
    L.diffuse.push_back(s.is_diffuse());
    remainder[L.sizes.size() - 1] = target - Rational(d);
    filled += d * s.n;
  }

  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return remainder[x] > remainder[y]; });
  int left = N - filled;
  bool progress = true;
  while (left > 0 && progress) {
    progress = false;
    for (std::size_t i : order) {
      if (L.sizes[i] <= left) {
        ++L.multiplicities[i];
        left -= L.sizes[i];
        progress = true;
        if (left == 0) break;
      }
    }
  }
  if (left != 0 && !exact_fill(a, N, L.multiplicities)) {
    throw AmbientTooSmall("cannot fill N = " + std::to_string(N) + " with blocks of sizes matching " + describe(a));
  }
  int offset = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (L.multiplicities[i] < 1) {
      throw AmbientTooSmall("N = " + std::to_string(N) + " gives summand " + std::to_string(i + 1) +
                            " no room; increase N");
    }
    L.offsets.push_back(offset);
    offset += L.sizes[i] * L.multiplicities[i];
    L.achieved_weights.push_back(Rational(std::int64_t{L.sizes[i]} * L.multiplicities[i], N));
  }
  return L;
}

CMatrix haar_isometry(int N, int k, std::mt19937_64& rng) {
  if (k < 0 || k > N) throw DomainError("haar_isometry needs 0 <= k <= N, got k = " + std::to_string(k));
  if (k == 0) return CMatrix(N, 0);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  CMatrix g(N, k);
  for (Eigen::Index c = 0; c < k; ++c) {
    for (Eigen::Index r = 0; r < N; ++r) g(r, c) = cd(gauss(rng), gauss(rng));
  }
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(N, k);
  const CMatrix& r = qr.matrixQR();
  for (Eigen::Index c = 0; c < k; ++c) {
    const cd d = r(c, c);
    const double mag = std::abs(d);
    if (mag > 0) q.col(c) *= d / mag;
  }
  return q;
}

CMatrix haar_unitary(int N, std::mt19937_64& rng) { return haar_isometry(N, N, rng); }

CMatrix dense(const SideElement& x, const BlockLayout& layout) {
  check_layout(x, layout);
  CMatrix m = CMatrix::Zero(layout.N, layout.N);
  for (std::size_t i = 0; i < layout.sizes.size(); ++i) {
    const int n = layout.sizes[i];
    const int d = layout.multiplicities[i];
    const int o = layout.offsets[i];
    if (const auto* p = std::get_if<HaarPoly>(&x.parts()[i])) {
      m.diagonal().segment(o, d) = haar_diagonal(*p, d);
      continue;
    }
    const CMatrix xi = to_dense(std::get<ExactMatrix>(x.parts()[i]));
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (xi(a, b) == cd(0)) continue;
        for (int r = 0; r < d; ++r) m(o + a * d + r, o + b * d + r) = xi(a, b);
      }
    }
  }
  return m;
}

void multiply_right(CMatrix& m, const SideElement& x, const BlockLayout& layout) {
  check_layout(x, layout);
  if (m.cols() != layout.N) throw ShapeMismatchError("matrix does not match the layout dimension");
  for (std::size_t i = 0; i < layout.sizes.size(); ++i) {
    const int n = layout.sizes[i];
    const int d = layout.multiplicities[i];
    const int o = layout.offsets[i];
    if (const auto* p = std::get_if<HaarPoly>(&x.parts()[i])) {
      m.middleCols(o, d) = m.middleCols(o, d) * haar_diagonal(*p, d).asDiagonal();
      continue;
    }
    const CMatrix xi = to_dense(std::get<ExactMatrix>(x.parts()[i]));
    const CMatrix old = m.middleCols(o, n * d);
    for (int b = 0; b < n; ++b) {
      auto col = m.middleCols(o + b * d, d);
      col.setZero();
      for (int a = 0; a < n; ++a) {
        if (xi(a, b) != cd(0)) col += xi(a, b) * old.middleCols(a * d, d);
      }
    }
  }
}

void multiply_left(const SideElement& x, const BlockLayout& layout, CMatrix& m) {
  check_layout(x, layout);
  if (m.rows() != layout.N) throw ShapeMismatchError("matrix does not match the layout dimension");
  for (std::size_t i = 0; i < layout.sizes.size(); ++i) {
    const int n = layout.sizes[i];
    const int d = layout.multiplicities[i];
    const int o = layout.offsets[i];
    if (const auto* p = std::get_if<HaarPoly>(&x.parts()[i])) {
      m.middleRows(o, d) = haar_diagonal(*p, d).asDiagonal() * m.middleRows(o, d);
      continue;
    }
    const CMatrix xi = to_dense(std::get<ExactMatrix>(x.parts()[i]));
    const CMatrix old = m.middleRows(o, n * d);
    for (int a = 0; a < n; ++a) {
      auto rows = m.middleRows(o + a * d, d);
      rows.setZero();
      for (int b = 0; b < n; ++b) {
        if (xi(a, b) != cd(0)) rows += xi(a, b) * old.middleRows(b * d, d);
      }
    }
  }
}

int intersection_rank(const CMatrix& P, const CMatrix& Q) {
  if (P.rows() != P.cols() || Q.rows() != Q.cols() || P.rows() != Q.rows()) {
    throw ShapeMismatchError("intersection_rank needs two projections on the same space");
  }
  // singular values of PQ as square roots of eig((PQ)^* PQ). BDCSVD crashed
  // on these highly degenerate inputs at N = 1000.
  const CMatrix m = P * Q;
  const CMatrix g = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(g, Eigen::EigenvaluesOnly);
  int count = 0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double s = std::sqrt(std::max(es.eigenvalues()(k), 0.0));
    if (std::abs(s - 1.0) <= 1e-8) ++count;
  }
  return count;
}

}  // namespace freeprod
