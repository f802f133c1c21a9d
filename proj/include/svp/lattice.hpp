/* lattice.hpp — classical lattice machinery: Gram matrices, duals,
 * Gram-Schmidt data, volumes, the Gaussian heuristic, orthogonality
 * defects and random q-ary instances.
 *
 * Exactness policy: Gram matrices and determinants are integer/rational
 * and exact; scalar summaries (volume, heuristic radius, defect) are
 * doubles computed in the log domain so that desk-scale ranks (n ~ 80,
 * determinants ~ q^{n/2}) do not overflow.
 */
#pragma once

#include <cstdint>
#include <vector>

#include "svp/basis.hpp"

namespace svp {

/// Gram matrix G = B * B^T (n x n, exact).
IntMat gram(const Basis &b);

/// Gram matrix of exact rational rows.
RatMat gram_rat(const RatMat &rows);

/// Dual basis: rows bhat_i spanning span(B) with <b_j, bhat_i> = delta_ij,
/// i.e. Bhat = (B B^T)^{-1} B.  For square full-rank B this is B^{-T}.
/// Throws ParameterError if the rows are linearly dependent.
RatMat dual_basis(const Basis &b);

/// Exact Gram-Schmidt orthogonalisation.
/// bstar rows satisfy b_i = bstar_i + sum_{j<i} mu(i,j) bstar_j.
struct GsoResult {
  RatMat bstar;              // n x d rational rows
  RatMat mu;                 // n x n, lower triangular, mu(i,i) = 1
  std::vector<Rat> bstar_sq; // ||bstar_i||^2
};
GsoResult gso(const Basis &b);

/// det(G) as an exact integer (= vol(L)^2).
Int volume_sq(const Basis &b);

/// vol(L) = sqrt(det G), as a double.
double volume(const Basis &b);

/// Gaussian heuristic radius gh(L) = C * sqrt(n / (2 pi e)) * vol^{1/n}.
double gaussian_heuristic(const Basis &b, double C = 1.0);

/// Same, from an exact rational Gram matrix (used on projected blocks).
double gaussian_heuristic_gram(const RatMat &g, double C = 1.0);

/// Low-level form: n, log2(vol^2) and the scale factor C.
double gh_from_log2_volsq(std::size_t n, double log2_volsq, double C);

/// log2 of the orthogonality defect prod ||b_i|| / vol(L)  (>= 0).
double orthogonality_defect_log2(const Basis &b);

/// The defect itself; may overflow to +inf for strongly skewed bases,
/// prefer the log2 form in formulas.
double orthogonality_defect(const Basis &b);

/// Random q-ary lattice basis
///   [ I_{d-k}  A ]
///   [ 0      q I_k ]
/// with A uniform over {0,...,q-1}^{(d-k) x k}; det = q^k.  Deterministic
/// in (d, k, q, seed): A is filled row-major from Rng(seed).
Basis sample_qary(std::size_t d, std::size_t k, const Int &q,
                  std::uint64_t seed);

/// Experiment instance source: sample_qary(d, k, q, seed), LLL-reduce
/// (delta = 0.99) and keep the first n rows.  Defined in reduction.cpp.
Basis prepare_instance(std::size_t d, std::size_t k, const Int &q,
                       std::size_t n, std::uint64_t seed);

} // namespace svp
