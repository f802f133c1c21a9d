/* statevector.hpp — noiseless state-vector simulation of the
 * hardware-efficient ansatz: per-qubit Y rotations interleaved with
 * controlled-Z entangling passes.
 *
 * Every gate kernel exists in two forms: a serial reference
 * implementation and an OpenMP-parallel version.  Both update disjoint
 * amplitude pairs elementwise, so they produce bit-identical states; the
 * test suite asserts this and the benchmark target compares their
 * throughput.
 */
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace svp {

enum class Entangler { chain, ring };
const char *to_string(Entangler e);

/// Layer-L ansatz: initial Ry layer, then L repetitions of
/// [CZ entangling pass, Ry layer].  Parameter count N * (L + 1).
struct AnsatzSpec {
  int n_qubits = 0;
  int layers = 2;
  Entangler entangler = Entangler::chain;

  int n_params() const { return n_qubits * (layers + 1); }
};

struct StateVector {
  int n_qubits = 0;
  std::vector<std::complex<double>> amp;

  std::size_t dim() const { return amp.size(); }
};

/// Largest qubit count the engine will allocate (default 26, about 1 GiB
/// of amplitudes); the SVP_VQE_MAX_QUBITS environment variable overrides.
int max_state_qubits();

/// |0...0> on n qubits.  Throws BudgetError above max_state_qubits().
StateVector zero_state(int n_qubits);

/// Ry(theta) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]] on one qubit.
void apply_ry(StateVector &s, int qubit, double theta);
void apply_ry_serial(StateVector &s, int qubit, double theta);

/// Controlled-Z on a qubit pair (symmetric).
void apply_cz(StateVector &s, int a, int b);
void apply_cz_serial(StateVector &s, int a, int b);

/// One Ry rotation per qubit, angles theta[0..N).
void apply_ry_layer(StateVector &s, const double *theta);

/// CZ along the entangler pattern: chain (0,1)(1,2)...(N-2,N-1), ring
/// additionally (N-1,0) when N > 2.
void apply_cz_pass(StateVector &s, Entangler e);

/// Full circuit on |0...0>; |theta| must equal spec.n_params().
StateVector apply_ansatz(const AnsatzSpec &spec,
                         const std::vector<double> &theta);
/// Reference path built from the serial kernels only.
StateVector apply_ansatz_serial(const AnsatzSpec &spec,
                                const std::vector<double> &theta);

/// Sum of squared amplitude magnitudes (1 within 1e-10 for any ansatz
/// output).
double state_norm_sq(const StateVector &s);

} // namespace svp
