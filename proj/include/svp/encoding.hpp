/* encoding.hpp — from lattice to Hamiltonian: coefficient bounds from
 * the dual basis, qubit budgets, binary integer encodings, QUBO
 * construction and the Ising mapping.
 *
 * Conventions fixed here and used everywhere:
 *   - bitstrings are packed into std::uint64_t, bit i = (s >> i) & 1;
 *   - bit value 1 corresponds to spin eigenvalue z = -1 (s = (1-z)/2);
 *   - all Hamiltonian coefficients are exact rationals; doubles appear
 *     only inside the VQE engine.
 */
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "svp/basis.hpp"

namespace svp {

// ---------------------------------------------------------------------------
// Coefficient bounds and qubit budgets
// ---------------------------------------------------------------------------

enum class BoundKind { dual_lemma, uniform, uniform_random, dual_scaled };
const char *to_string(BoundKind k);

/// Per-coordinate search box |x_i| <= m[i] together with the number of
/// binary variables allotted to each coordinate.  bits[i] is normally the
/// natural width floor(log2(2 m_i)) + 1, except for the 1-bit-per-
/// coefficient mapping where m_i = 1 is represented with a single bit.
/// A coordinate with m[i] = 0 is pinned to x_i = 0 and uses zero bits.
struct BoundsVector {
  std::vector<long> m;
  std::vector<int> bits;
  BoundKind kind = BoundKind::dual_lemma;

  std::size_t size() const { return m.size(); }
  int total_bits() const;
};

/// Coefficient bounds for all lattice points within radius A:
/// m_i = floor(A * ||bhat_i||) from the exact dual basis (the square root
/// and floor are floating, with 1e-12 upward slack before flooring).
BoundsVector dual_bounds(const Basis &b, double A);

/// Total qubit demand N = sum over m_i >= 1 of floor(log2(2 m_i)) + 1.
int qubit_count(const std::vector<long> &m);
int qubit_count(const BoundsVector &bounds);

/// Qubit budget bound  2n + log2((C^2 n / 2 pi e)^{n/2} * dual_defect).
double qubit_budget_bound(std::size_t n, double dual_defect, double C);
/// Same with the defect passed in the log domain (large-n safe).
double qubit_budget_bound_log2(std::size_t n, double log2_dual_defect,
                               double C);

/// Distribute a budget of m_qubits binary variables over n coordinates.
///   uniform:        floor(m/n) bits each, leftovers unused;
///   uniform-random: floor(m/n) bits each, the m mod n leftover bits go
///                   to distinct random coordinates (seeded);
///   dual-scaled:    Lemma-1 bounds at A = gh(L), scaled down uniformly
///                   until the total bit count fits the budget.
/// A coordinate holding b >= 2 bits encodes a = 2^{b-1} - 1; b = 1
/// encodes a = 1 on a single bit (the paper's one-qubit-per-coefficient
/// mapping).
BoundsVector naive_mapping(std::size_t n, long m_qubits,
                           const std::string &strategy, const Basis &b,
                           std::uint64_t seed);

/// Fraction of random instances whose shortest vector (either sign) fits
/// the naive_mapping box.  Instances are prepare_instance(rank+10,
/// (rank+10)/2, 65537, rank, seed_i); per-instance seeds derive from
/// `seed`.  Enumeration failures are counted and excluded from the
/// denominator.
struct InclusionResult {
  double probability = 0.0;
  std::size_t included = 0;
  std::size_t evaluated = 0;
  std::size_t errors = 0;
};
/// jobs > 1 parallelizes across instances; results are independent of
/// the job count (per-instance seeds, order-free counting).
InclusionResult inclusion_probability(std::size_t rank, long m_qubits,
                                      const std::string &strategy,
                                      std::size_t count, std::uint64_t seed,
                                      int jobs = 1);

/// floor(v * (1 + 1e-12)) clamped to non-negative: the Lemma-1 floor
/// with upward slack so near-integer radii are not floored down.
long bound_floor(double v);

// ---------------------------------------------------------------------------
// Integer-to-binary encodings
// ---------------------------------------------------------------------------

enum class Scheme { plain, penalty };
const char *to_string(Scheme s);

/// One coordinate's slice of the bitstring.  The decoded value is always
/// the linear form  offset + sum_j weights[j] * bit_{first_bit + j}.
///
/// plain coordinate with bound a (width w = floor(log2 2a) + 1):
///   weights = [1, 2, ..., 2^{w-2}, 2a + 1 - 2^{w-1}], offset = -a;
///   the 1-bit special case (a = 1) is the truncation [1] with offset -1,
///   decoding {-1, 0}.
/// penalty coordinate with bound a >= 2 (s = floor(log2 a)):
///   bit order [zeta, omega, magnitude...],
///   weights = [a, a+1, 1, 2, ..., 2^{s-1}, a - 2^s], offset = -a;
///   x_i = 0 forces zeta_i = 1; the zeta = omega = 1 branch decodes
///   beyond a (Eq. 4 taken verbatim; surfaced by the range tests).
struct CoordEncoding {
  long a = 0;
  int first_bit = 0;
  int bits = 0;
  long offset = 0;
  std::vector<long> weights;
  int zeta_bit = -1;  // penalty scheme only
  int omega_bit = -1; // penalty scheme only
};

struct IntegerEncoding {
  Scheme scheme = Scheme::plain;
  std::vector<CoordEncoding> coords;
  int n_vars = 0;
  int aux_start = 0; // penalty: index of the first free auxiliary z
  int n_aux = 0;     // penalty: max(n-2, 0) free auxiliaries

  std::size_t n() const { return coords.size(); }
};

/// Build the bit layout for the given bounds.  The penalty scheme
/// requires every a_i >= 2 and appends the free auxiliaries z_1..z_{n-2}
/// after all coordinate bits (z_n == 1 and z_{n-1} == zeta_n are
/// substituted symbolically, never materialised).
IntegerEncoding encode_integers(const BoundsVector &bounds, Scheme scheme);

/// Inverse of the encoding (auxiliary bits are ignored).
std::vector<long> decode_bitstring(const IntegerEncoding &enc,
                                   std::uint64_t bits);

/// True iff decode_bitstring(enc, bits) is the zero vector.
bool decodes_to_zero(const IntegerEncoding &enc, std::uint64_t bits);

// ---------------------------------------------------------------------------
// QUBO and Ising
// ---------------------------------------------------------------------------

/// value(s) = constant + sum_i linear[i] s_i + sum_{i<j} quadratic[{i,j}]
/// s_i s_j over bits s in {0,1}.  Exact rational coefficients.
struct QuboProblem {
  int n_vars = 0;
  Rat constant;
  std::vector<Rat> linear;
  std::map<std::pair<int, int>, Rat> quadratic;
};

/// value(z) = constant + sum h[i] z_i + sum_{i<j} j[{i,j}] z_i z_j over
/// spins z in {-1,+1}; bit 1 maps to z = -1.
struct IsingHamiltonian {
  int n_vars = 0;
  Rat constant;
  std::vector<Rat> h;
  std::map<std::pair<int, int>, Rat> j;
};

/// ||decode(s) * B||^2 as a QUBO over the encoding bits (Gram matrix in,
/// squares folded with the idempotence s^2 = s).
QuboProblem build_qubo(const IntMat &gram, const IntegerEncoding &enc);

/// build_qubo plus the zero-exclusion penalty
///   P * (1 + sum_i z_i * (-(1 - zeta_i) + sum_{k>i} (1 - zeta_k)))
/// with z_n = 1 and z_{n-1} = zeta_n substituted; minimising over the
/// free z gives P * prod_i zeta_i, i.e. P exactly on the zero vector.
QuboProblem build_penalty_qubo(const IntMat &gram, const IntegerEncoding &enc,
                               const Rat &penalty);

/// Default penalty weight: twice the squared first-row norm of an
/// LLL-reduced copy of b (an upper bound on lambda_1^2, doubled).
Rat default_penalty_weight(const Basis &b);

IsingHamiltonian qubo_to_ising(const QuboProblem &q);

/// Exact evaluations (used by the exhaustive equality tests).
Rat qubo_value(const QuboProblem &q, std::uint64_t bits);
Rat ising_eigenvalue_exact(const IsingHamiltonian &h, std::uint64_t bits);

// ---------------------------------------------------------------------------
// Interchange format
// ---------------------------------------------------------------------------

/// {"n_vars", "constant", "linear": [{"i","c"}], "quadratic":
///  [{"i","j","c"}], "kind": "qubo"|"ising", "encoding": {...}} with all
/// rationals serialized as "p/q" strings.
nlohmann::json qubo_to_json(const QuboProblem &q, const IntegerEncoding *enc);
nlohmann::json ising_to_json(const IsingHamiltonian &h,
                             const IntegerEncoding *enc);
QuboProblem qubo_from_json(const nlohmann::json &j);
IsingHamiltonian ising_from_json(const nlohmann::json &j);
nlohmann::json encoding_to_json(const IntegerEncoding &enc);
IntegerEncoding encoding_from_json(const nlohmann::json &j);

} // namespace svp
