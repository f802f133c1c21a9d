#include <algorithm>
#include <cmath>
#include <numeric>

#include "svp/common.hpp"
#include "svp/rng.hpp"
#include "svp/vqe.hpp"

namespace svp {

const char *to_string(CostVariant v) {
  switch (v) {
  case CostVariant::mean:
    return "mean";
  case CostVariant::cvar:
    return "cvar";
  case CostVariant::zero_excluded_mean:
    return "zero-excluded-mean";
  case CostVariant::zero_excluded_cvar:
    return "zero-excluded-cvar";
  }
  return "?";
}

CostMode CostMode::exact_cvar(CostVariant v, double alpha) {
  CostMode m;
  m.variant = v;
  m.alpha = alpha;
  m.exact = true;
  return m;
}

CostMode CostMode::sampled_cvar(CostVariant v, double alpha, int shots,
                                std::uint64_t seed) {
  CostMode m;
  m.variant = v;
  m.alpha = alpha;
  m.shots = shots;
  m.seed = seed;
  return m;
}

double eigenvalue(const IsingHamiltonian &h, std::uint64_t bits) {
  auto spin = [&](int i) { return ((bits >> i) & 1u) ? -1.0 : 1.0; };
  double v = h.constant.get_d();
  for (int i = 0; i < h.n_vars; ++i)
    v += spin(i) * h.h[static_cast<std::size_t>(i)].get_d();
  for (const auto &[ij, c] : h.j)
    v += spin(ij.first) * spin(ij.second) * c.get_d();
  return v;
}

EvalTable build_eval_table(const IsingHamiltonian &h,
                           const IntegerEncoding *enc) {
  if (h.n_vars < 1 || h.n_vars > max_state_qubits())
    throw BudgetError("eval table: qubit count outside the supported range");
  if (enc && enc->n_vars != h.n_vars)
    throw ParameterError("eval table: encoding does not match Hamiltonian");
  EvalTable t;
  t.n_qubits = h.n_vars;
  const std::size_t dim = std::size_t{1} << h.n_vars;

  // Rounded coefficients, summed in the same order as eigenvalue() so
  // the table entries match it bitwise.
  const double constant = h.constant.get_d();
  std::vector<double> hq(static_cast<std::size_t>(h.n_vars));
  for (int i = 0; i < h.n_vars; ++i)
    hq[static_cast<std::size_t>(i)] = h.h[static_cast<std::size_t>(i)].get_d();
  std::vector<std::pair<std::pair<int, int>, double>> quad;
  quad.reserve(h.j.size());
  for (const auto &[ij, c] : h.j)
    quad.emplace_back(ij, c.get_d());
  t.energy.assign(dim, 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t s = 0; s < static_cast<std::int64_t>(dim); ++s) {
    const auto bits = static_cast<std::uint64_t>(s);
    auto spin = [&](int i) { return ((bits >> i) & 1u) ? -1.0 : 1.0; };
    double v = constant;
    for (int i = 0; i < h.n_vars; ++i)
      v += spin(i) * hq[static_cast<std::size_t>(i)];
    for (const auto &[ij, d] : quad)
      v += spin(ij.first) * spin(ij.second) * d;
    t.energy[bits] = v;
  }

  t.order.resize(dim);
  std::iota(t.order.begin(), t.order.end(), 0u);
  std::stable_sort(t.order.begin(), t.order.end(),
                   [&](std::uint32_t a, std::uint32_t b) {
                     return t.energy[a] < t.energy[b];
                   });
  t.zero.assign(dim, 0);
  if (enc)
    for (std::uint64_t s = 0; s < dim; ++s)
      t.zero[s] = decodes_to_zero(*enc, s) ? 1 : 0;
  return t;
}

std::vector<std::uint64_t> sample_bitstrings(const StateVector &state,
                                             int shots, std::uint64_t seed) {
  if (shots < 1)
    throw ParameterError("sample_bitstrings: need at least one shot");
  const std::size_t dim = state.dim();
  std::vector<double> cdf(dim);
  double acc = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    acc += std::norm(state.amp[i]);
    cdf[i] = acc;
  }
  std::vector<std::uint64_t> out(static_cast<std::size_t>(shots));
  Rng rng(seed);
  for (auto &b : out) {
    double u = rng.next_double() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    b = static_cast<std::uint64_t>(
        std::min<std::ptrdiff_t>(it - cdf.begin(),
                                 static_cast<std::ptrdiff_t>(dim) - 1));
  }
  return out;
}

double aggregate_shot_costs(std::vector<double> costs, CostVariant variant,
                            double alpha) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw ParameterError("CVaR fraction must be in (0, 1]");
  if (costs.empty())
    return kInfiniteCost;
  const bool tail = variant == CostVariant::cvar ||
                    variant == CostVariant::zero_excluded_cvar;
  std::size_t keep = costs.size();
  if (tail) {
    keep = static_cast<std::size_t>(
        std::ceil(alpha * static_cast<double>(costs.size()) - 1e-12));
    keep = std::max<std::size_t>(1, std::min(keep, costs.size()));
    std::nth_element(costs.begin(),
                     costs.begin() + static_cast<std::ptrdiff_t>(keep - 1),
                     costs.end());
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < keep; ++i)
    sum += costs[i];
  return sum / static_cast<double>(keep);
}

namespace {

bool zero_excluding(CostVariant v) {
  return v == CostVariant::zero_excluded_mean ||
         v == CostVariant::zero_excluded_cvar;
}

double exact_cost(const StateVector &state, const EvalTable &table,
                  const CostMode &mode) {
  const bool exclude = zero_excluding(mode.variant);
  const bool tail = mode.variant == CostVariant::cvar ||
                    mode.variant == CostVariant::zero_excluded_cvar;
  // total surviving mass (renormalization for the zero-excluded modes)
  double total = 0.0;
  for (std::size_t i = 0; i < table.dim(); ++i)
    if (!(exclude && table.zero[i]))
      total += std::norm(state.amp[i]);
  if (total <= 0.0)
    return kInfiniteCost;
  if (!tail) {
    double acc = 0.0;
    for (std::size_t i = 0; i < table.dim(); ++i)
      if (!(exclude && table.zero[i]))
        acc += std::norm(state.amp[i]) * table.energy[i];
    return acc / total;
  }
  // CVaR: conditional expectation of the lowest alpha fraction of the
  // (surviving, renormalized) distribution; the boundary basis state
  // contributes only the mass needed to reach alpha.
  const double want = mode.alpha * total;
  double mass = 0.0, acc = 0.0;
  for (std::uint32_t idx : table.order) {
    if (exclude && table.zero[idx])
      continue;
    double p = std::norm(state.amp[idx]);
    if (p <= 0.0)
      continue;
    double take = std::min(p, want - mass);
    acc += take * table.energy[idx];
    mass += take;
    if (mass >= want)
      break;
  }
  if (mass <= 0.0)
    return kInfiniteCost;
  return acc / mass;
}

double sampled_cost(const StateVector &state, const EvalTable &table,
                    const CostMode &mode) {
  std::vector<std::uint64_t> shots =
      sample_bitstrings(state, mode.shots, mode.seed);
  const bool exclude = zero_excluding(mode.variant);
  std::vector<double> costs;
  costs.reserve(shots.size());
  for (std::uint64_t b : shots) {
    if (exclude && table.zero[b])
      continue;
    costs.push_back(table.energy[b]);
  }
  return aggregate_shot_costs(std::move(costs), mode.variant, mode.alpha);
}

} // namespace

double eval_cost(const StateVector &state, const EvalTable &table,
                 const CostMode &mode) {
  if (state.dim() != table.dim())
    throw ParameterError("eval_cost: state and table dimensions differ");
  if (!(mode.alpha > 0.0) || mode.alpha > 1.0)
    throw ParameterError("CVaR fraction must be in (0, 1]");
  return mode.exact ? exact_cost(state, table, mode)
                    : sampled_cost(state, table, mode);
}

double eval_cost(const StateVector &state, const IsingHamiltonian &h,
                 const CostMode &mode, const IntegerEncoding *enc) {
  return eval_cost(state, build_eval_table(h, enc), mode);
}

double overlap(const StateVector &state,
               const std::vector<std::uint64_t> &targets) {
  double p = 0.0;
  for (std::uint64_t b : targets) {
    if (b >= state.dim())
      throw ParameterError("overlap: target bitstring outside the state");
    p += std::norm(state.amp[b]);
  }
  return p;
}

SampledSolution sample_solution(const StateVector &state, int shots,
                                const IntegerEncoding &enc,
                                const IsingHamiltonian &h, std::uint64_t seed) {
  if (shots < 1)
    throw ParameterError("sample_solution: need at least one shot");
  std::vector<std::uint64_t> draws = sample_bitstrings(state, shots, seed);
  SampledSolution best;
  auto better = [](const std::vector<long> &a, const std::vector<long> &b) {
    // prefer first nonzero coefficient positive, then lexicographic
    auto lead_neg = [](const std::vector<long> &v) {
      for (long c : v)
        if (c != 0)
          return c < 0;
      return false;
    };
    bool na = lead_neg(a), nb = lead_neg(b);
    if (na != nb)
      return !na;
    return a < b;
  };
  for (std::uint64_t b : draws) {
    if (decodes_to_zero(enc, b))
      continue;
    Rat e = ising_eigenvalue_exact(h, b);
    std::vector<long> x = decode_bitstring(enc, b);
    if (!best.found || e < best.energy ||
        (e == best.energy && better(x, best.x))) {
      best.found = true;
      best.bitstring = b;
      best.x = std::move(x);
      best.energy = std::move(e);
    }
  }
  return best;
}

} // namespace svp
