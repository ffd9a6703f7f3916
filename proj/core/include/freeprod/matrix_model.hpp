#pragma once

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "freeprod/element.hpp"

// Finite-dimensional models: each side's algebra acts on C^N as
// (+)_i M_{n_i} (x) 1_{d_i}, and the right side is rotated by a Haar unitary.
// For large N the two sides are approximately free.

namespace freeprod {

using CMatrix = Eigen::MatrixXcd;

/// How one algebra sits in M_N. Coordinates of summand i are
/// offset_i + a * d_i + r for a < n_i, r < d_i, and an element x acts as x (x) 1_{d_i}.
struct BlockLayout {
  int N = 0;
  std::vector<int> sizes;           // n_i (1 for the diffuse summand)
  std::vector<int> multiplicities;  // d_i
  std::vector<int> offsets;
  std::vector<bool> diffuse;
  std::vector<Rational> achieved_weights;  // d_i n_i / N
};

/// Largest-remainder rounding of alpha_i N / n_i with sum d_i n_i = N.
/// Throws AmbientTooSmall if some d_i would be 0 or N cannot be filled.
BlockLayout realize(const TracialAlgebra& a, int N);

/// Haar unitary from the QR decomposition of a complex Ginibre matrix, with
/// column phases fixed so that R has a positive diagonal.
CMatrix haar_unitary(int N, std::mt19937_64& rng);

/// The first k columns of a Haar unitary, at the cost of a thin QR.
CMatrix haar_isometry(int N, int k, std::mt19937_64& rng);

/// Dense N x N matrix of an element. The diffuse summand's Haar generator is
/// diag(exp(2 pi i r / d)).
CMatrix dense(const SideElement& x, const BlockLayout& layout);

/// m <- m * x and m <- x * m without forming x densely.
void multiply_right(CMatrix& m, const SideElement& x, const BlockLayout& layout);
void multiply_left(const SideElement& x, const BlockLayout& layout, CMatrix& m);

/// dim(ran P intersect ran Q): singular values of PQ within 1e-8 of 1.
int intersection_rank(const CMatrix& P, const CMatrix& Q);

}  // namespace freeprod
