#include "svp/statevector.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "svp/common.hpp"

namespace svp {

const char *to_string(Entangler e) {
  return e == Entangler::chain ? "chain" : "ring";
}

int max_state_qubits() {
  static const int limit = [] {
    if (const char *env = std::getenv("SVP_VQE_MAX_QUBITS")) {
      int v = std::atoi(env);
      if (v >= 1 && v <= 40)
        return v;
    }
    return 26;
  }();
  return limit;
}

StateVector zero_state(int n_qubits) {
  if (n_qubits < 1)
    throw ParameterError("zero_state: need at least one qubit");
  if (n_qubits > max_state_qubits())
    throw BudgetError("state vector of " + std::to_string(n_qubits) +
                      " qubits exceeds the memory guard (" +
                      std::to_string(max_state_qubits()) +
                      "); set SVP_VQE_MAX_QUBITS to override");
  StateVector s;
  s.n_qubits = n_qubits;
  s.amp.assign(std::size_t{1} << n_qubits, {0.0, 0.0});
  s.amp[0] = {1.0, 0.0};
  return s;
}

namespace {

void check_qubit(const StateVector &s, int q) {
  if (q < 0 || q >= s.n_qubits)
    throw ParameterError("gate on qubit out of range");
}

} // namespace

// Each iteration below touches the disjoint pair (i, i | 1<<q), so the
// serial and OpenMP versions compute identical floating-point results.

void apply_ry_serial(StateVector &s, int qubit, double theta) {
  check_qubit(s, qubit);
  const double c = std::cos(0.5 * theta);
  const double n = std::sin(0.5 * theta);
  const std::uint64_t mask = std::uint64_t{1} << qubit;
  const std::uint64_t dim = s.dim();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & mask)
      continue;
    std::complex<double> a0 = s.amp[i];
    std::complex<double> a1 = s.amp[i | mask];
    s.amp[i] = c * a0 - n * a1;
    s.amp[i | mask] = n * a0 + c * a1;
  }
}

void apply_ry(StateVector &s, int qubit, double theta) {
  check_qubit(s, qubit);
  const double c = std::cos(0.5 * theta);
  const double n = std::sin(0.5 * theta);
  const std::uint64_t mask = std::uint64_t{1} << qubit;
  const std::int64_t pairs = static_cast<std::int64_t>(s.dim() >> 1);
  const std::uint64_t low = mask - 1;
#pragma omp parallel for schedule(static)
  for (std::int64_t p = 0; p < pairs; ++p) {
    const std::uint64_t u = static_cast<std::uint64_t>(p);
    const std::uint64_t i = ((u & ~low) << 1) | (u & low);
    std::complex<double> a0 = s.amp[i];
    std::complex<double> a1 = s.amp[i | mask];
    s.amp[i] = c * a0 - n * a1;
    s.amp[i | mask] = n * a0 + c * a1;
  }
}

void apply_cz_serial(StateVector &s, int a, int b) {
  check_qubit(s, a);
  check_qubit(s, b);
  if (a == b)
    throw ParameterError("controlled-Z needs two distinct qubits");
  const std::uint64_t mask =
      (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
  const std::uint64_t dim = s.dim();
  for (std::uint64_t i = 0; i < dim; ++i)
    if ((i & mask) == mask)
      s.amp[i] = -s.amp[i];
}

void apply_cz(StateVector &s, int a, int b) {
  check_qubit(s, a);
  check_qubit(s, b);
  if (a == b)
    throw ParameterError("controlled-Z needs two distinct qubits");
  const std::uint64_t mask =
      (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
  const std::int64_t dim = static_cast<std::int64_t>(s.dim());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < dim; ++i) {
    const std::uint64_t u = static_cast<std::uint64_t>(i);
    if ((u & mask) == mask)
      s.amp[u] = -s.amp[u];
  }
}

void apply_ry_layer(StateVector &s, const double *theta) {
  for (int q = 0; q < s.n_qubits; ++q)
    apply_ry(s, q, theta[q]);
}

void apply_cz_pass(StateVector &s, Entangler e) {
  for (int q = 0; q + 1 < s.n_qubits; ++q)
    apply_cz(s, q, q + 1);
  if (e == Entangler::ring && s.n_qubits > 2)
    apply_cz(s, s.n_qubits - 1, 0);
}

namespace {

template <typename RyFn, typename CzFn>
StateVector run_circuit(const AnsatzSpec &spec,
                        const std::vector<double> &theta, RyFn ry, CzFn cz) {
  if (spec.n_qubits < 1 || spec.layers < 0)
    throw ParameterError("apply_ansatz: invalid ansatz shape");
  if (static_cast<int>(theta.size()) != spec.n_params())
    throw ParameterError("apply_ansatz: expected " +
                         std::to_string(spec.n_params()) + " parameters, got " +
                         std::to_string(theta.size()));
  StateVector s = zero_state(spec.n_qubits);
  const double *t = theta.data();
  for (int q = 0; q < s.n_qubits; ++q)
    ry(s, q, t[q]);
  t += s.n_qubits;
  for (int layer = 0; layer < spec.layers; ++layer) {
    for (int q = 0; q + 1 < s.n_qubits; ++q)
      cz(s, q, q + 1);
    if (spec.entangler == Entangler::ring && s.n_qubits > 2)
      cz(s, s.n_qubits - 1, 0);
    for (int q = 0; q < s.n_qubits; ++q)
      ry(s, q, t[q]);
    t += s.n_qubits;
  }
  return s;
}

} // namespace

StateVector apply_ansatz(const AnsatzSpec &spec,
                         const std::vector<double> &theta) {
  return run_circuit(
      spec, theta, [](StateVector &s, int q, double t) { apply_ry(s, q, t); },
      [](StateVector &s, int a, int b) { apply_cz(s, a, b); });
}

StateVector apply_ansatz_serial(const AnsatzSpec &spec,
                                const std::vector<double> &theta) {
  return run_circuit(
      spec, theta,
      [](StateVector &s, int q, double t) { apply_ry_serial(s, q, t); },
      [](StateVector &s, int a, int b) { apply_cz_serial(s, a, b); });
}

double state_norm_sq(const StateVector &s) {
  double n = 0.0;
  for (const auto &a : s.amp)
    n += std::norm(a);
  return n;
}

} // namespace svp
