/* vqe.hpp — cost evaluation (sampled and exact-distribution, CVaR and
 * zero-excluded variants), the derivative-free optimizer, and solution
 * extraction: target bitstring sets, overlaps, measurement sampling.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "svp/basis.hpp"
#include "svp/encoding.hpp"
#include "svp/statevector.hpp"

namespace svp {

// ---------------------------------------------------------------------------
// Cost evaluation
// ---------------------------------------------------------------------------

/// Returned when every shot (or all probability mass) decodes to the
/// zero vector: the zero-excluded cost is undefined there, and the
/// optimizer needs a finite worst value.
constexpr double kInfiniteCost = 1e18;

enum class CostVariant { mean, cvar, zero_excluded_mean, zero_excluded_cvar };
const char *to_string(CostVariant v);

struct CostMode {
  CostVariant variant = CostVariant::mean;
  double alpha = 1.0;   // CVaR tail fraction, 0 < alpha <= 1
  bool exact = false;   // exact-distribution instead of sampling
  int shots = 512;      // sampled evaluation only
  std::uint64_t seed = 0;

  static CostMode exact_cvar(CostVariant v, double alpha);
  static CostMode sampled_cvar(CostVariant v, double alpha, int shots,
                               std::uint64_t seed);
};

/// constant + sum h_i z_i + sum J_ij z_i z_j in double arithmetic
/// (coefficients rounded once).
double eigenvalue(const IsingHamiltonian &h, std::uint64_t bits);

/// Per-Hamiltonian cache: every basis-state energy, the index order
/// sorted by (energy, index), and zero-vector flags from the encoding.
/// Built once, shared by every cost evaluation of that Hamiltonian.
struct EvalTable {
  int n_qubits = 0;
  std::vector<double> energy; // 2^N entries
  std::vector<std::uint32_t> order;
  std::vector<char> zero;

  std::size_t dim() const { return energy.size(); }
};

/// enc may be null when no zero-exclusion will be used (all flags false).
EvalTable build_eval_table(const IsingHamiltonian &h,
                           const IntegerEncoding *enc);

/// shots draws from |amp|^2 by inverse-CDF lookup; deterministic in seed.
std::vector<std::uint64_t> sample_bitstrings(const StateVector &state,
                                             int shots, std::uint64_t seed);

/// Combine per-shot costs: mean, or CVaR = mean of the ceil(alpha * n)
/// lowest.  `costs` need not be sorted; zero-excluded filtering happens
/// before this call.  Empty input returns kInfiniteCost.
double aggregate_shot_costs(std::vector<double> costs, CostVariant variant,
                            double alpha);

/// Cost of `state` under every mode.  Exact-distribution CVaR is the
/// conditional expectation of the lower alpha probability mass (the
/// boundary state contributes fractionally); zero-excluded modes first
/// restrict to (and renormalize over) non-zero-decoding basis states and
/// return kInfiniteCost when no such state carries mass (sampled: when
/// no shot survives).
double eval_cost(const StateVector &state, const EvalTable &table,
                 const CostMode &mode);

/// Convenience wrapper building a throwaway table (tests, one-shot use).
double eval_cost(const StateVector &state, const IsingHamiltonian &h,
                 const CostMode &mode, const IntegerEncoding *enc);

// ---------------------------------------------------------------------------
// Optimization
// ---------------------------------------------------------------------------

struct OptimizerConfig {
  int max_iters = 2000; // per start
  int restarts = 2;     // random restarts after the first start
  double tol = 1e-4;    // per-iteration relative improvement: a start stops
  int patience = 20;    // when the simplex mean drops by less than
                        // tol * patience over the last patience iterations
  double initial_step = 0.8; // initial simplex edge, radians

  bool operator==(const OptimizerConfig &) const = default;
};

struct VqeRunResult {
  std::vector<double> theta;    // best parameters found
  double final_cost = 0.0;
  std::size_t iterations = 0;   // total optimizer iterations, all starts
  std::size_t cost_evals = 0;
  std::vector<double> trace;    // best-so-far cost per iteration (winning
                                // start only)
  bool converged = false;
  double overlap = 0.0;         // vs. targets, 0 when none supplied
  std::uint64_t seed = 0;
};

/// Derivative-free simplex optimization (Nelder-Mead with the
/// dimension-adaptive coefficients) of eval_cost over the ansatz
/// parameters; theta starts uniform in [0, 2pi) per coordinate, seeded.
/// Sampled modes re-seed every evaluation from (mode.seed, seed, eval
/// counter), so (seed, config) fully determines the result.  When
/// `targets` is supplied the final state's overlap is recorded.
VqeRunResult optimize(const IsingHamiltonian &h, const AnsatzSpec &spec,
                      const CostMode &mode, const OptimizerConfig &config,
                      std::uint64_t seed, const EvalTable *table = nullptr,
                      const std::vector<std::uint64_t> *targets = nullptr);

// ---------------------------------------------------------------------------
// Targets and solution extraction
// ---------------------------------------------------------------------------

/// All bitstrings (auxiliary bits free) whose decode equals a shortest
/// nonzero coefficient vector of the lattice, provided that vector lies
/// in the decode box; sorted ascending.  Empty when no shortest vector
/// is representable.
std::vector<std::uint64_t> target_set(const Basis &b,
                                      const IntegerEncoding &enc);

/// Probability mass of `state` on `targets`.
double overlap(const StateVector &state,
               const std::vector<std::uint64_t> &targets);

struct SampledSolution {
  bool found = false;
  std::uint64_t bitstring = 0;
  std::vector<long> x;
  Rat energy; // exact eigenvalue of the returned bitstring
};

/// Draw shots, decode, drop x = 0, return the lowest-energy decoded
/// vector (ties: first nonzero coefficient positive, then lexicographic
/// smallest).
SampledSolution sample_solution(const StateVector &state, int shots,
                                const IntegerEncoding &enc,
                                const IsingHamiltonian &h, std::uint64_t seed);

} // namespace svp
