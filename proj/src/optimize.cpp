#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <utility>

#include "svp/common.hpp"
#include "svp/enumerate.hpp"
#include "svp/rng.hpp"
#include "svp/vqe.hpp"

namespace svp {

// ---------------------------------------------------------------------------
// Target bitstrings
// ---------------------------------------------------------------------------

std::vector<std::uint64_t> target_set(const Basis &b,
                                      const IntegerEncoding &enc) {
  if (b.rank() != enc.n())
    throw ParameterError("target_set: basis rank does not match encoding");
  if (b.rank() > kMaxEnumRank)
    throw ParameterError("target_set: rank exceeds the enumeration guard");
  if (enc.n_vars > 30)
    throw BudgetError("target_set: too many binary variables to sweep");

  std::vector<EnumResult> shortest = shortest_vectors(b);

  // Values each coordinate must be able to take, over all candidates.
  const std::size_t n = enc.n();
  std::vector<std::vector<long>> wanted(n);
  std::vector<std::vector<long>> coeffs(shortest.size());
  for (std::size_t s = 0; s < shortest.size(); ++s) {
    coeffs[s].resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Int &c = shortest[s].x[i];
      if (!c.fits_slong_p())
        throw NumericalError("target_set: coefficient does not fit a long");
      coeffs[s][i] = c.get_si();
      wanted[i].push_back(coeffs[s][i]);
    }
  }

  // Local bit patterns realizing each wanted value, per coordinate.
  std::vector<std::map<long, std::vector<std::uint64_t>>> preimages(n);
  for (std::size_t i = 0; i < n; ++i) {
    const CoordEncoding &c = enc.coords[i];
    std::sort(wanted[i].begin(), wanted[i].end());
    wanted[i].erase(std::unique(wanted[i].begin(), wanted[i].end()),
                    wanted[i].end());
    for (std::uint64_t pat = 0; pat < (std::uint64_t{1} << c.bits); ++pat) {
      long v = c.offset;
      for (int j = 0; j < c.bits; ++j)
        if ((pat >> j) & 1u)
          v += c.weights[j];
      if (std::binary_search(wanted[i].begin(), wanted[i].end(), v))
        preimages[i][v].push_back(pat);
    }
  }

  std::vector<std::uint64_t> out;
  std::vector<std::uint64_t> partial;
  for (const std::vector<long> &x : coeffs) {
    bool representable = true;
    for (std::size_t i = 0; i < n && representable; ++i)
      representable = preimages[i].count(x[i]) > 0;
    if (!representable)
      continue;
    partial.assign(1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::uint64_t> next;
      for (std::uint64_t base : partial)
        for (std::uint64_t pat : preimages[i].at(x[i]))
          next.push_back(base | (pat << enc.coords[i].first_bit));
      partial = std::move(next);
    }
    // auxiliary bits are free: every assignment decodes to the same x
    for (std::uint64_t base : partial)
      for (std::uint64_t aux = 0; aux < (std::uint64_t{1} << enc.n_aux); ++aux)
        out.push_back(base | (aux << enc.aux_start));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Nelder-Mead with dimension-adaptive coefficients
// ---------------------------------------------------------------------------

namespace {

struct NmRun {
  std::vector<double> theta;
  double cost = kInfiniteCost;
  std::vector<double> trace;
  std::size_t iterations = 0;
  bool converged = false;
};

template <typename CostFn>
NmRun nelder_mead(std::vector<double> x0, const OptimizerConfig &cfg,
                  CostFn &&cost) {
  const std::size_t p = x0.size();
  const double rho = 1.0;
  const double chi = 1.0 + 2.0 / static_cast<double>(p);
  const double gamma = 0.75 - 0.5 / static_cast<double>(p);
  const double sigma = 1.0 - 1.0 / static_cast<double>(p);

  std::vector<std::vector<double>> xs(p + 1, x0);
  std::vector<double> fs(p + 1);
  for (std::size_t i = 1; i <= p; ++i)
    xs[i][i - 1] += cfg.initial_step;
  for (std::size_t i = 0; i <= p; ++i)
    fs[i] = cost(xs[i]);

  std::vector<std::size_t> idx(p + 1);
  std::iota(idx.begin(), idx.end(), 0);
  auto order = [&] {
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return fs[a] < fs[b];
    });
  };

  NmRun run;
  double checkpoint = kInfiniteCost;
  for (int it = 0; it < cfg.max_iters; ++it) {
    order();
    const std::size_t lo = idx[0], hi = idx[p], nh = idx[p - 1];

    std::vector<double> centroid(p, 0.0);
    for (std::size_t k = 0; k < p; ++k)
      for (std::size_t d = 0; d < p; ++d)
        centroid[d] += xs[idx[k]][d];
    for (double &c : centroid)
      c /= static_cast<double>(p);

    auto combine = [&](double t) {
      std::vector<double> y(p);
      for (std::size_t d = 0; d < p; ++d)
        y[d] = centroid[d] + t * (centroid[d] - xs[hi][d]);
      return y;
    };

    std::vector<double> xr = combine(rho);
    double fr = cost(xr);
    if (fr < fs[lo]) {
      std::vector<double> xe = combine(rho * chi);
      double fe = cost(xe);
      if (fe < fr) {
        xs[hi] = std::move(xe);
        fs[hi] = fe;
      } else {
        xs[hi] = std::move(xr);
        fs[hi] = fr;
      }
    } else if (fr < fs[nh]) {
      xs[hi] = std::move(xr);
      fs[hi] = fr;
    } else {
      bool shrink = false;
      if (fr < fs[hi]) {
        std::vector<double> xc = combine(rho * gamma);
        double fc = cost(xc);
        if (fc <= fr) {
          xs[hi] = std::move(xc);
          fs[hi] = fc;
        } else {
          shrink = true;
        }
      } else {
        std::vector<double> xc = combine(-gamma);
        double fc = cost(xc);
        if (fc < fs[hi]) {
          xs[hi] = std::move(xc);
          fs[hi] = fc;
        } else {
          shrink = true;
        }
      }
      if (shrink) {
        for (std::size_t k = 1; k <= p; ++k) {
          std::size_t i = idx[k];
          for (std::size_t d = 0; d < p; ++d)
            xs[i][d] = xs[lo][d] + sigma * (xs[i][d] - xs[lo][d]);
          fs[i] = cost(xs[i]);
        }
      }
    }

    double best = *std::min_element(fs.begin(), fs.end());
    run.trace.push_back(best);
    run.iterations += 1;

    // Progress-rate stop: every `patience` iterations re-evaluate the
    // incumbent vertex and compare with the previous such checkpoint.  The
    // stored simplex values are minima over noisy draws, so any rule based
    // on them alone ratchets on shot noise and never fires; a fresh
    // evaluation is unbiased.  A start is converged when the checkpoint
    // value stops dropping faster than tol per iteration.
    if ((it + 1) % cfg.patience == 0) {
      order();
      double fresh = cost(xs[idx[0]]);
      double drop =
          (checkpoint - fresh) / std::max(std::abs(fresh), 1e-12);
      if (drop < cfg.tol * static_cast<double>(cfg.patience)) {
        run.converged = true;
        break;
      }
      checkpoint = fresh;
    }
  }

  order();
  run.theta = xs[idx[0]];
  run.cost = fs[idx[0]];
  return run;
}

} // namespace

VqeRunResult optimize(const IsingHamiltonian &h, const AnsatzSpec &spec,
                      const CostMode &mode, const OptimizerConfig &config,
                      std::uint64_t seed, const EvalTable *table,
                      const std::vector<std::uint64_t> *targets) {
  if (spec.n_qubits != h.n_vars)
    throw ParameterError("optimize: ansatz width does not match Hamiltonian");
  if (config.max_iters < 1 || config.restarts < 0 || config.patience < 1)
    throw ParameterError("optimize: invalid optimizer configuration");
  const bool needs_zero_flags = mode.variant == CostVariant::zero_excluded_mean ||
                                mode.variant == CostVariant::zero_excluded_cvar;
  EvalTable local;
  if (!table) {
    if (needs_zero_flags)
      throw ParameterError(
          "optimize: zero-excluded modes need a table built with the encoding");
    local = build_eval_table(h, nullptr);
    table = &local;
  }

  VqeRunResult result;
  result.seed = seed;
  Rng rng(seed);
  const std::uint64_t eval_stream = derive_seed(mode.seed, seed);

  for (int start = 0; start <= config.restarts; ++start) {
    std::vector<double> theta0(static_cast<std::size_t>(spec.n_params()));
    for (double &t : theta0)
      t = rng.next_double() * 2.0 * std::numbers::pi;

    auto cost = [&](const std::vector<double> &theta) {
      StateVector st = apply_ansatz(spec, theta);
      CostMode m = mode;
      if (!mode.exact)
        m.seed = derive_seed(eval_stream, result.cost_evals);
      result.cost_evals += 1;
      return eval_cost(st, *table, m);
    };

    NmRun run = nelder_mead(std::move(theta0), config, cost);
    result.iterations += run.iterations;
    if (start == 0 || run.cost < result.final_cost) {
      result.final_cost = run.cost;
      result.theta = std::move(run.theta);
      result.trace = std::move(run.trace);
      result.converged = run.converged;
    }
  }

  if (targets && !targets->empty()) {
    StateVector st = apply_ansatz(spec, result.theta);
    result.overlap = overlap(st, *targets);
  }
  return result;
}

} // namespace svp
