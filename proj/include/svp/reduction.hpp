/* reduction.hpp — basis reduction: size reduction, LLL, BKZ, HKZ,
 * pseudo-HKZ and the dual-side HKZ procedure that drives the qubit
 * budget analysis.
 *
 * Arithmetic split: basis rows and Gram matrices are exact integers
 * throughout; Gram-Schmidt data inside LLL is double precision, freshly
 * re-derived from the exact Gram after every swap, so rounding errors
 * steer at most the order of operations, never the lattice.  Every
 * routine leaves the lattice itself unchanged (all transforms are
 * unimodular) and finishes with an exact size-reduction pass.
 */
#pragma once

#include <cstdint>

#include "svp/enumerate.hpp"
#include "svp/lattice.hpp"

namespace svp {

/// Exact size reduction: after the call |mu(i,j)| <= 1/2 for all j < i
/// (rational Gram-Schmidt, round-half-up).  Gram-Schmidt vectors are
/// untouched.
void size_reduce(Basis &b);

struct LllStats {
  std::uint64_t swaps = 0;
  std::uint64_t size_reductions = 0;
};

/// LLL reduction with Lovász parameter delta in (1/4, 1); default 0.99.
/// Postconditions: size-reduced, and for all i
///   delta * ||bstar_i||^2 <= ||bstar_{i+1}||^2 + mu(i+1,i)^2 ||bstar_i||^2
/// (the floating Gram-Schmidt steering certifies delta up to ~1e-9).
LllStats lll(Basis &b, double delta = 0.99);

struct BkzStats {
  std::size_t tours = 0;
  std::uint64_t insertions = 0;
};

/// BKZ-beta with an exact SVP oracle on projected blocks.  Runs tours
/// until a clean tour or max_tours, LLL-reducing after every insertion.
/// An empty oracle defaults to the enumeration oracle.
BkzStats bkz(Basis &b, std::size_t beta, const SvpOracle &oracle = {},
             double delta = 0.99, std::size_t max_tours = 16);

/// Hermite-Korkine-Zolotarev reduction: for every level i the projection
/// of b_i orthogonally to b_1..b_{i-1} is a shortest vector of the
/// projected lattice, and the basis is size-reduced.
void hkz(Basis &b, const SvpOracle &oracle = {});

/// Pseudo-HKZ: LLL-reduce, then HKZ-reduce the first n-1 rows as a
/// rank-(n-1) lattice; the last Gram-Schmidt vector keeps its LLL value.
void pseudo_hkz(Basis &b, const SvpOracle &oracle = {});

/// Upper bound on the orthogonality defect of an HKZ-reduced basis:
///   prod_{i=1}^{n} sqrt(i+3)/2  *  gamma_n^{n/2},  gamma_n < n/8 + 6/5.
double hkz_defect_bound(std::size_t n);
double hkz_defect_bound_log2(std::size_t n);

/// Statistics of algorithm1_dual_hkz, including the Lemma-1 qubit count
/// of every bounded enumeration performed anywhere in the recursion.
struct AlgOneStats {
  int max_enum_qubits = 0;        // max over all enumeration calls
  std::uint64_t enum_calls = 0;   // bounded enumerations performed
  std::uint64_t escalations = 0;  // radius retries (Gaussian heuristic low)
  double max_radius_factor = 1.0; // largest radius factor actually used
};

/// HKZ reduction working through the dual, sized for bounded (qubit-
/// limited) enumeration:
///   1. pseudo-HKZ-reduce the dual (LLL, then recurse on its first n-1
///      rows),
///   2. enumerate a shortest vector v of the primal inside the
///      coefficient box |x_i| <= floor(A ||dual row i||), A = C * gh(L),
///      doubling A if the heuristic radius missed lambda_1,
///   3. extract a basis with b_1 = v, HKZ-reduce the projections
///      orthogonal to v recursively, and lift with offsets
///      alpha_i in (-1/2, 1/2].
/// Output is an HKZ-reduced basis of the same lattice.  The recursion is
/// followed literally, so the cost is exponential in n — this is a
/// desk-scale instrument for rank <= ~16.
Basis algorithm1_dual_hkz(const Basis &b, AlgOneStats *stats = nullptr,
                          double C = 1.0,
                          std::uint64_t node_budget = kDefaultNodeBudget);

// ---------------------------------------------------------------------------
// Building blocks shared by the reduction algorithms (exposed for tests)
// ---------------------------------------------------------------------------

/// Unimodular matrix with first row x; requires gcd(x) = 1.
IntMat unimodular_completion(const std::vector<Int> &x);

/// Exact Gram matrix of rows i..i+count-1 projected orthogonally to
/// rows 0..i-1 (Schur complement of the leading i x i block).
RatMat projected_gram(const Basis &b, std::size_t i, std::size_t count);

/// Nearest integer to a rational, rounding half up.
Int round_rat(const Rat &x);

} // namespace svp
