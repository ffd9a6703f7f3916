#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "freeprod/algebra.hpp"
#include "freeprod/rational.hpp"

// Structure of the reduced free product (A, tau_A) * (B, tau_B) of two
// finite-dimensional tracial algebras. Two independent engines are provided:
//
//   decompose               closed form over all index pairs (i, j)
//   decompose_by_induction  peels one matrix summand at a time, replaces it
//                           by a scalar, recurses, and rebuilds the corner
//                           p_k A p_k with the scalars-times-matrix and
//                           mixed-times-matrix case engines
//
// Both return a Decomposition in input index order, so they can be compared
// with operator==.

namespace freeprod {

enum class Side { Left, Right };

inline Side opposite(Side s) { return s == Side::Left ? Side::Right : Side::Left; }
inline const char* side_name(Side s) { return s == Side::Left ? "left" : "right"; }

/// A support projection p_i (left) or q_j (right), 1-based.
struct ProjectionRef {
  Side side = Side::Left;
  int index = 1;
  friend auto operator<=>(const ProjectionRef&, const ProjectionRef&) = default;
};

using IndexPair = std::pair<int, int>;  // (i, j), 1-based

enum class AtomClass { Plus, Zero };

/// Pair (i, j) with alpha_i/n_i^2 + beta_j/m_j^2 >= 1. Plus blocks are
/// matrix direct summands of weight gamma; Zero pairs carry gamma = 0.
struct AtomBlock {
  int i = 0;
  int j = 0;
  int N = 1;  // max(n_i, m_j)
  Rational gamma;
  AtomClass cls = AtomClass::Plus;
  friend bool operator==(const AtomBlock&, const AtomBlock&) = default;
};

/// Unital *-homomorphism from the factor part onto M_N, sending f p_i and
/// f q_j to the unit.
struct BoundaryMap {
  int i = 0;
  int j = 0;
  int target_size = 1;
  friend bool operator==(const BoundaryMap&, const BoundaryMap&) = default;
};

/// Verdicts for the intersection of the kernels of all boundary maps.
struct KernelReport {
  bool simple = true;
  bool unital = false;
  bool unique_trace = true;
  friend bool operator==(const KernelReport&, const KernelReport&) = default;
};

/// f p_i (or f q_j) is full in the factor part intersected with the kernels
/// of the listed boundary maps.
struct FullnessClaim {
  ProjectionRef projection;
  std::vector<IndexPair> kernels;
  friend bool operator==(const FullnessClaim&, const FullnessClaim&) = default;
};

struct FactorPart {
  Rational weight;
  bool unital = true;
  bool simple = true;
  bool unique_trace = true;
  /// Projections f p_i, f q_j that support a unital diffuse abelian subalgebra.
  std::vector<ProjectionRef> diffuse_witnesses;
  friend bool operator==(const FactorPart&, const FactorPart&) = default;
};

/// Which threshold case a scalars-or-mixed times M_n product falls into,
/// according to the largest scalar weight alpha versus 1 - 1/n^2.
enum class Regime { Below, At, Above };

struct Decomposition {
  FactorPart factor;
  std::vector<AtomBlock> plus_blocks;
  std::vector<BoundaryMap> boundary_maps;
  std::optional<KernelReport> kernel;
  std::vector<FullnessClaim> fullness;

  /// Set by the case engines only.
  std::optional<Regime> regime;
  /// Projections known to be full in the whole algebra (case engines only).
  std::vector<ProjectionRef> full_in_whole;

  /// Present only for the degenerate input where one side is C: the free
  /// product is then the other algebra, returned unchanged.
  std::optional<TracialAlgebra> passthrough;
  std::vector<std::string> notes;

  bool has_exact_sequence() const { return !boundary_maps.empty(); }

  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

/// Compares the parts both engines and the case engines produce: factor,
/// blocks, boundary maps, kernel report, and fullness claims.
bool same_structure(const Decomposition& a, const Decomposition& b);

/// Exchanges the roles of the two sides: (i, j) -> (j, i), left <-> right.
Decomposition swap_sides(const Decomposition& d);

/// Sorts every list into canonical order. All engines return canonical output.
void canonicalize(Decomposition& d);

/// Pairs (i, j) of matrix summands with alpha_i/n_i^2 + beta_j/m_j^2 > 1
/// (first) and == 1 (second). Diffuse summands never participate.
std::pair<std::vector<AtomBlock>, std::vector<AtomBlock>> classify_pairs(const TracialAlgebra& a,
                                                                         const TracialAlgebra& b);

/// Closed-form structure. Throws DimensionHypothesisViolated when the
/// hypotheses dim(A) >= 2, dim(B) >= 2, dim(A) + dim(B) >= 5 fail, except for
/// the degenerate case dim = 1, which returns the other side as passthrough.
Decomposition decompose(const TracialAlgebra& a, const TracialAlgebra& b);

/// Same result as decompose, computed by induction on the number of matrix
/// summands of size >= 2.
Decomposition decompose_by_induction(const TracialAlgebra& a, const TracialAlgebra& b);

/// Input for the corner p_i A p_i, which is again a free product:
/// (p_i A_1 p_i) * (M_{n_i}, tr), where A_1 is the algebra with summand i of
/// A replaced by a scalar of the same weight.
struct CompressedProduct {
  TracialAlgebra left;
  TracialAlgebra right;
  Rational weight;  // alpha_i, the trace of p_i
  /// For each left summand (0-based), the right index j of the block of A_1
  /// it came from, or nullopt for the compressed factor part.
  std::vector<std::optional<int>> origin;
};

CompressedProduct compression_rewrite(const TracialAlgebra& a, const TracialAlgebra& b, int index);

/// (C^{a_1} (+) ... (+) C^{a_m}) * (M_n, tr_n), weights ascending, m >= 2, n >= 2.
Decomposition scalar_times_matrix(const std::vector<Rational>& weights, int n);

/// (D (+) M_{m_1} (+) ... (+) C^{a_1} (+) ... (+) C^{a_l}) * (M_n, tr_n) where
/// the left side has a diffuse summand or a matrix summand of size >= 2 and
/// the scalar summands appear in ascending weight order.
Decomposition mixed_with_matrix(const TracialAlgebra& left, int n);

enum class TwoProjectionCase { Distinct, EqualAboveHalf, Half };

/// C*(p, q) for free projections with traces alpha >= beta >= 1/2.
struct TwoProjectionStructure {
  TwoProjectionCase which = TwoProjectionCase::Half;
  Rational alpha;
  Rational beta;
  Rational atom_p_not_q;  // weight of p meet (1 - q)
  Rational atom_p_and_q;  // weight of p meet q
  /// Support [a, b] of the atomless part of the spectral measure of pqp.
  double support_lo = 0.0;
  double support_hi = 1.0;
  friend bool operator==(const TwoProjectionStructure&, const TwoProjectionStructure&) = default;
};

TwoProjectionStructure two_projection_structure(const Rational& alpha, const Rational& beta);

/// von Neumann algebra free product: L(F_t) plus the same matrix blocks.
/// The parameter t is not computed.
struct VnDecomposition {
  std::string factor_tag = "L(F_t)";
  Rational factor_weight;
  std::vector<AtomBlock> plus_blocks;
  friend bool operator==(const VnDecomposition&, const VnDecomposition&) = default;
};

VnDecomposition vn_decompose(const TracialAlgebra& a, const TracialAlgebra& b);

std::string regime_name(Regime r);
std::string two_projection_case_name(TwoProjectionCase c);

// Shared by the engines; exposed for tests.
namespace detail {

/// Fullness claims that follow from a boundary-map set: f p_i is full in the
/// factor part intersected with the kernels of all maps (i', j) with i' != i.
std::vector<FullnessClaim> fullness_from_boundary(const TracialAlgebra& a, const TracialAlgebra& b,
                                                  const std::vector<BoundaryMap>& maps);

/// Every summand projection on both sides.
std::vector<ProjectionRef> all_witnesses(const TracialAlgebra& a, const TracialAlgebra& b);

void check_dimension_hypotheses(const TracialAlgebra& a, const TracialAlgebra& b);

/// Result for a degenerate input where one side is C.
std::optional<Decomposition> degenerate_passthrough(const TracialAlgebra& a, const TracialAlgebra& b);

}  // namespace detail

}  // namespace freeprod
