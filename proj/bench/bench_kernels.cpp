// Gate-kernel throughput: OpenMP-parallel kernels vs. the serial
// reference implementation, plus the cost-evaluation hot path.

#include <benchmark/benchmark.h>

#include <vector>

#include "svp/encoding.hpp"
#include "svp/lattice.hpp"
#include "svp/rng.hpp"
#include "svp/vqe.hpp"

using namespace svp;

namespace {

std::vector<double> random_theta(const AnsatzSpec &spec, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> theta(spec.n_params());
  for (double &t : theta)
    t = rng.next_double() * 6.283185307179586;
  return theta;
}

void bench_ansatz_parallel(benchmark::State &state) {
  AnsatzSpec spec{static_cast<int>(state.range(0)), 2, Entangler::chain};
  auto theta = random_theta(spec, 7);
  for (auto _ : state) {
    StateVector s = apply_ansatz(spec, theta);
    benchmark::DoNotOptimize(s.amp.data());
  }
}

void bench_ansatz_serial(benchmark::State &state) {
  AnsatzSpec spec{static_cast<int>(state.range(0)), 2, Entangler::chain};
  auto theta = random_theta(spec, 7);
  for (auto _ : state) {
    StateVector s = apply_ansatz_serial(spec, theta);
    benchmark::DoNotOptimize(s.amp.data());
  }
}

void bench_ry_parallel(benchmark::State &state) {
  StateVector s = zero_state(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    apply_ry(s, 3, 0.7);
    benchmark::DoNotOptimize(s.amp.data());
  }
}

void bench_ry_serial(benchmark::State &state) {
  StateVector s = zero_state(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    apply_ry_serial(s, 3, 0.7);
    benchmark::DoNotOptimize(s.amp.data());
  }
}

void bench_eval_cost_exact(benchmark::State &state) {
  const int n = static_cast<int>(state.range(0));
  Basis b = prepare_instance(n + 10, (n + 10) / 2, 65537, n, 5);
  BoundsVector bv = naive_mapping(n, n, "uniform", b, 5);
  IntegerEncoding enc = encode_integers(bv, Scheme::plain);
  IsingHamiltonian h = qubo_to_ising(build_qubo(gram(b), enc));
  EvalTable table = build_eval_table(h, &enc);
  AnsatzSpec spec{enc.n_vars, 2, Entangler::chain};
  StateVector s = apply_ansatz(spec, random_theta(spec, 3));
  CostMode mode = CostMode::exact_cvar(CostVariant::zero_excluded_cvar, 0.175);
  for (auto _ : state) {
    double c = eval_cost(s, table, mode);
    benchmark::DoNotOptimize(c);
  }
}

} // namespace

BENCHMARK(bench_ansatz_parallel)->Arg(12)->Arg(16)->Arg(20);
BENCHMARK(bench_ansatz_serial)->Arg(12)->Arg(16)->Arg(20);
BENCHMARK(bench_ry_parallel)->Arg(16)->Arg(20);
BENCHMARK(bench_ry_serial)->Arg(16)->Arg(20);
BENCHMARK(bench_eval_cost_exact)->Arg(10)->Arg(16);

BENCHMARK_MAIN();
