/* enumerate.hpp — exact lattice point enumeration (Schnorr-Euchner).
 *
 * The depth-first search is steered by double-precision Gram-Schmidt
 * data with an outward slack of 1e-9 on the squared radius, and every
 * candidate leaf is re-verified with exact rational arithmetic against
 * the exact radius, so a vector inside the ball is never lost to
 * rounding and a vector outside is never reported.
 *
 * Two independent search routes exist on purpose: the tree search here
 * and the naive coefficient-box sweep in box_search().  They cross-check
 * each other in the test suite and must not be merged.
 *
 * All entry points work on coefficient vectors: a result x means the
 * lattice vector x * B (or the quadratic form value x G x^T when called
 * with a Gram matrix).
 */
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "svp/basis.hpp"

namespace svp {

/// Enumeration is a desk-scale tool; beyond this rank the search tree is
/// hopeless and the caller almost certainly made a mistake.
inline constexpr std::size_t kMaxEnumRank = 32;

/// Default budget on visited search-tree nodes.
inline constexpr std::uint64_t kDefaultNodeBudget = 100'000'000ULL;

/// Default budget on points visited by the naive box sweep.
inline constexpr std::uint64_t kDefaultBoxBudget = 1ULL << 22;

struct EnumResult {
  std::vector<Int> x; // coefficient vector w.r.t. the basis rows
  Rat norm_sq;        // exact squared norm of x * B
};

/// All nonzero lattice points with ||x B|| <= radius, both signs included,
/// optionally restricted to the coefficient box |x_i| <= box[i]
/// (box[i] == 0 pins coordinate i to zero).  Sorted by (norm, x lex).
/// Returns an empty vector when the ball contains no nonzero point.
/// Throws BudgetError when the node budget is exhausted.
std::vector<EnumResult>
enumerate_ball(const Basis &b, double radius,
               const std::optional<std::vector<long>> &box = std::nullopt,
               std::uint64_t node_budget = kDefaultNodeBudget);

/// A shortest nonzero vector of L(B); among all lambda_1 solutions the
/// coefficient vector is canonical: sign-normalised (first nonzero entry
/// positive) and lexicographically smallest.
EnumResult shortest_vector(const Basis &b,
                           std::uint64_t node_budget = kDefaultNodeBudget);

/// All coefficient vectors of norm exactly lambda_1 (both signs), sorted
/// by (norm, x lex).
std::vector<EnumResult>
shortest_vectors(const Basis &b, std::uint64_t node_budget = kDefaultNodeBudget);

/// Independent oracle: minimum-norm nonzero point of the coefficient box
/// |x_i| <= m[i], by direct sweep over all prod (2 m_i + 1) points.
/// Ties broken like shortest_vector.  Returns nullopt for an empty search
/// space (all m_i == 0); throws BudgetError when the box exceeds the
/// point budget.
std::optional<EnumResult> box_search(const Basis &b,
                                     const std::vector<long> &m,
                                     std::uint64_t point_budget = kDefaultBoxBudget);

// ---------------------------------------------------------------------------
// Gram-level interface — reduction algorithms call these on exact Gram
// matrices of projected blocks, where no integer basis exists.
// ---------------------------------------------------------------------------

/// As enumerate_ball, for the quadratic form x G x^T <= radius_sq (exact).
std::vector<EnumResult>
enumerate_gram_ball(const RatMat &g, const Rat &radius_sq,
                    const std::optional<std::vector<long>> &box = std::nullopt,
                    std::uint64_t node_budget = kDefaultNodeBudget);

/// As shortest_vector, for a positive definite rational Gram matrix.
EnumResult shortest_gram(const RatMat &g,
                         std::uint64_t node_budget = kDefaultNodeBudget);

/// Minimum-norm nonzero point with x G x^T <= radius_sq and |x_i| <= box[i]
/// (ties broken canonically); nullopt when ball and box share no nonzero
/// point.  This is the classical stand-in for the bounded enumeration an
/// annealer or NISQ device would perform.
std::optional<EnumResult> shortest_in_box(const RatMat &g, const Rat &radius_sq,
                                          const std::vector<long> &box,
                                          std::uint64_t node_budget = kDefaultNodeBudget);

// ---------------------------------------------------------------------------
// SVP oracle plumbing
// ---------------------------------------------------------------------------

/// Exact SVP oracle on a positive definite rational Gram matrix.
/// found == false is only permitted when the form has no nonzero vector
/// at all (never happens for positive definite forms) — an oracle that
/// cannot certify minimality must not pose as one.
struct OracleResult {
  bool found = false;
  std::vector<Int> x;
  Rat norm_sq;
};

using SvpOracle = std::function<OracleResult(const RatMat &gram)>;

/// The classical reference oracle, backed by shortest_gram.
SvpOracle make_enum_oracle(std::uint64_t node_budget = kDefaultNodeBudget);

// ---------------------------------------------------------------------------
// Shared canonical ordering helpers
// ---------------------------------------------------------------------------

/// Flip x to -x if its first nonzero entry is negative.
void sign_normalize(std::vector<Int> &x);

/// Lexicographic order on coefficient vectors.
bool coeff_less(const std::vector<Int> &a, const std::vector<Int> &b);

} // namespace svp
