// Acceptance harness: nine end-to-end criteria, each printed as a single
// [PASS]/[FAIL] line with its wall-clock time.  The process exit code is
// the number of failed criteria.
//
// Run all criteria with no arguments, or a subset by listing their
// numbers (e.g. "svp_acceptance 1 3 8").

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "svp/cli.hpp"
#include "svp/harness.hpp"
#include "svp/lattice.hpp"
#include "svp/reduction.hpp"
#include "svp/rng.hpp"
#include "svp/vqe.hpp"

using namespace svp;

namespace {

struct Check {
  bool ok = true;
  std::vector<std::string> notes;

  void expect(bool cond, const std::string &msg) {
    if (!cond) {
      ok = false;
      notes.push_back(msg);
    }
  }
  void note(const std::string &msg) { notes.push_back(msg); }
};

Basis random_full_rank(std::size_t n, std::uint64_t seed, long half_range) {
  Rng rng(seed);
  for (;;) {
    Basis b(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        b.rows(i, j) = rng.next_in_range(-half_range, half_range);
    if (volume_sq(b) != 0)
      return b;
  }
}

BoundsVector natural_bounds(std::vector<long> m) {
  BoundsVector bv;
  bv.m = std::move(m);
  for (long a : bv.m) {
    int w = 0;
    if (a > 0) {
      w = 1;
      while ((1L << w) <= 2 * a)
        ++w;
    }
    bv.bits.push_back(w);
  }
  return bv;
}

Rat exact_norm_sq(const IntMat &g, const std::vector<long> &x) {
  Rat v = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      v += Rat(g(i, j)) * Rat(x[i]) * Rat(x[j]);
  return v;
}

// -------------------------------------------------------------------------
// 1. Exhaustive three-way value equality on >= 100 random Hamiltonians
// -------------------------------------------------------------------------
void criterion_energy_equality(Check &c) {
  std::size_t instances = 0;
  std::uint64_t states = 0;
  for (std::uint64_t t = 0; instances < 100 && t < 400; ++t) {
    Basis b;
    std::vector<long> m;
    Rng rng(derive_seed(0xE0, t));
    if (t % 3 == 2) {
      b = prepare_instance(13, 6, 65537, 3, derive_seed(0xE1, t));
      m = {1, 2, 1};
    } else {
      std::size_t n = 2 + t % 3;
      b = random_full_rank(n, derive_seed(0xE2, t), 8);
      m.resize(n);
      for (long &a : m)
        a = 1 + static_cast<long>(rng.next_below(3));
    }
    BoundsVector bv = natural_bounds(m);
    if (t % 5 == 0) // sprinkle the one-bit truncated mapping in
      for (std::size_t i = 0; i < bv.m.size(); ++i)
        if (bv.m[i] == 1)
          bv.bits[i] = 1;
    IntegerEncoding enc = encode_integers(bv, Scheme::plain);
    if (enc.n_vars > 14)
      continue;
    IntMat g = gram(b);
    QuboProblem q = build_qubo(g, enc);
    IsingHamiltonian h = qubo_to_ising(q);
    for (std::uint64_t s = 0; s < (1ULL << enc.n_vars); ++s) {
      Rat norm = exact_norm_sq(g, decode_bitstring(enc, s));
      Rat qv = qubo_value(q, s);
      Rat iv = ising_eigenvalue_exact(h, s);
      if (qv != norm || iv != norm) {
        c.expect(false, "value mismatch at instance " + std::to_string(t) +
                            ", state " + std::to_string(s));
        return;
      }
      ++states;
    }
    ++instances;
  }
  c.expect(instances >= 100, "only " + std::to_string(instances) +
                                 " instances fit the width limit");
  c.note(std::to_string(instances) + " instances, " + std::to_string(states) +
         " states, all three values equal exactly");
}

// -------------------------------------------------------------------------
// 2. Dual-basis coefficient bounds never exclude a ball point
// -------------------------------------------------------------------------
void criterion_bounds_complete(Check &c) {
  std::size_t instances = 0, nonempty = 0, points = 0, violations = 0;
  auto sweep = [&](const Basis &b, double radius) {
    BoundsVector bv = dual_bounds(b, radius);
    auto pts = enumerate_ball(b, radius);
    for (const auto &p : pts)
      for (std::size_t i = 0; i < b.rank(); ++i) {
        ++points;
        if (p.x[i] > Int(bv.m[i]) || p.x[i] < -Int(bv.m[i]))
          ++violations;
      }
    return pts.size();
  };
  for (std::uint64_t t = 0; t < 50; ++t) {
    std::size_t n = 4 + t % 5; // ranks 4..8
    Basis b = sample_qary(n, n / 2, Int(65537), derive_seed(0xB0, t));
    lll(b);
    // the headline radius: the gaussian heuristic (often below lambda_1
    // at these ranks, so the ball may legitimately be empty) ...
    sweep(b, gaussian_heuristic(b));
    // ... plus a radius just above lambda_1, which never is
    double l1 = std::sqrt(shortest_vector(b).norm_sq.get_d());
    if (sweep(b, l1 * (1.0 + 1e-9)) > 0)
      ++nonempty;
    ++instances;
  }
  c.expect(violations == 0, std::to_string(violations) + " box violations");
  c.expect(nonempty == instances, "an enumeration at lambda_1 came back empty");
  c.expect(points >= 100, "too few coordinate checks (" +
                              std::to_string(points) + ")");
  c.note(std::to_string(instances) + " instances, " + std::to_string(points) +
         " coordinate checks, " + std::to_string(violations) + " violations");
}

// -------------------------------------------------------------------------
// 3. Penalty scheme: auxiliary minimum and ground-state value
// -------------------------------------------------------------------------
void criterion_penalty(Check &c) {
  const Rat P(7);
  // (a) with a zero Gram matrix the QUBO is the penalty term alone;
  // minimised over the free auxiliaries it must equal P * prod zeta for
  // every assignment of the coordinate bits
  for (std::size_t n : {2, 3}) {
    BoundsVector bv = natural_bounds(std::vector<long>(n, 2));
    IntegerEncoding enc = encode_integers(bv, Scheme::penalty);
    IntMat zero(n, n);
    QuboProblem q = build_penalty_qubo(zero, enc, P);
    for (std::uint64_t s = 0; s < (1ULL << enc.aux_start); ++s) {
      Rat best = qubo_value(q, s);
      for (std::uint64_t a = 1; a < (1ULL << enc.n_aux); ++a) {
        Rat v = qubo_value(q, s | (a << enc.aux_start));
        if (v < best)
          best = v;
      }
      bool all_zeta = true;
      for (const auto &coord : enc.coords)
        all_zeta &= ((s >> coord.zeta_bit) & 1) != 0;
      if (best != (all_zeta ? P : Rat(0))) {
        c.expect(false, "penalty minimum wrong at n = " + std::to_string(n) +
                            ", state " + std::to_string(s));
        return;
      }
    }
  }
  // (b) on real lattices the full penalty QUBO has ground energy
  // lambda_1^2, attained on a non-zero decode, with the default weight
  std::size_t ground_checked = 0;
  for (std::uint64_t t = 0; ground_checked < 6 && t < 40; ++t) {
    std::size_t n = 2 + t % 2;
    Basis b = random_full_rank(n, derive_seed(0xC0, t), 4);
    lll(b);
    auto mins = shortest_vectors(b);
    bool representable = false;
    for (const auto &v : mins) {
      bool fits = true;
      for (const Int &xi : v.x)
        fits &= (xi >= -2 && xi <= 2);
      representable |= fits;
    }
    if (!representable)
      continue;
    BoundsVector bv = natural_bounds(std::vector<long>(n, 2));
    IntegerEncoding enc = encode_integers(bv, Scheme::penalty);
    Rat weight = default_penalty_weight(b);
    c.expect(weight > mins.front().norm_sq, "default weight not above lambda_1^2");
    QuboProblem q = build_penalty_qubo(gram(b), enc, weight);
    Rat best = qubo_value(q, 0);
    std::uint64_t argbest = 0;
    for (std::uint64_t s = 1; s < (1ULL << enc.n_vars); ++s) {
      Rat v = qubo_value(q, s);
      if (v < best) {
        best = v;
        argbest = s;
      }
    }
    if (best != mins.front().norm_sq || decodes_to_zero(enc, argbest)) {
      c.expect(false, "ground state wrong at trial " + std::to_string(t));
      return;
    }
    ++ground_checked;
  }
  c.expect(ground_checked >= 6, "too few ground-state instances");
  c.note("auxiliary-minimum identity exhaustive for n = 2, 3; " +
         std::to_string(ground_checked) + " ground states equal lambda_1^2");
}

// -------------------------------------------------------------------------
// 4. One-qubit-per-coefficient inclusion probabilities
// -------------------------------------------------------------------------
void criterion_inclusion(Check &c) {
  const std::map<std::size_t, double> expected{
      {15, 0.80}, {20, 0.70}, {25, 0.50}};
  for (const auto &[rank, target] : expected) {
    InclusionResult r = inclusion_probability(
        rank, static_cast<long>(rank), "uniform", 256,
        derive_seed(0xD0, rank), effective_jobs(0));
    std::ostringstream line;
    line << "rank " << rank << ": " << r.probability << " (expected "
         << target << " +- 0.08, " << r.evaluated << " evaluated, "
         << r.errors << " errors)";
    c.note(line.str());
    c.expect(std::abs(r.probability - target) <= 0.08,
             "rank " + std::to_string(rank) + " outside the band");
    c.expect(r.evaluated >= 200, "too many enumeration failures");
  }
}

// -------------------------------------------------------------------------
// 5. Dual-LLL qubit scaling against the quadratic growth law
// -------------------------------------------------------------------------
void criterion_scaling(Check &c) {
  for (std::size_t n : {40, 60, 80}) {
    double expected = -21.699 + 2.467 * n + 0.036 * n * n;
    double sum = 0;
    for (std::uint64_t rep = 0; rep < 5; ++rep)
      sum += dual_reduced_qubit_count(n, "lll", derive_seed(0xF0 + n, rep),
                                      1.0);
    double mean = sum / 5;
    std::ostringstream line;
    line << "n = " << n << ": mean " << mean << " qubits (law " << expected
         << ", band 15%)";
    c.note(line.str());
    c.expect(std::abs(mean - expected) <= 0.15 * expected,
             "n = " + std::to_string(n) + " outside the band");
  }
}

// -------------------------------------------------------------------------
// 6. CVaR alpha sweep at rank 16
// -------------------------------------------------------------------------
void criterion_cvar_sweep(Check &c) {
  ExperimentConfig cfg;
  cfg.seed = 1;
  cfg.jobs = 0;
  cfg.ranks = {16};
  cfg.count = 64;
  cfg.alphas = {0.05, 0.1, 0.175, 0.25, 0.5, 0.75, 1.0};
  cfg.cost_variant = "zero-excluded-cvar";
  cfg.exact_cost = true;
  cfg.layers = 2;
  cfg.sample_budget = 5000;
  cfg.optimizer.max_iters = 300;
  cfg.optimizer.restarts = 1;
  cfg = resolve_config(Command::cvar_sweep, cfg);

  std::ostringstream csv;
  CampaignSummary sum = run_cvar_sweep(cfg, csv);
  double p_se172 = -1, p_one = -1, best_alpha = -1, best_median = -1;
  for (const auto &row : sum.rows) {
    std::ostringstream line;
    line << "alpha " << row.key << ": p5000 " << row.p_samples << ", median "
         << row.median_overlap << ", mean " << row.mean_overlap << " ("
         << row.count << " ok, " << row.errors << " errors)";
    c.note(line.str());
    if (std::abs(row.key - 0.175) < 1e-9)
      p_se172 = row.p_samples;
    if (std::abs(row.key - 1.0) < 1e-9)
      p_one = row.p_samples;
    if (row.median_overlap > best_median) {
      best_median = row.median_overlap;
      best_alpha = row.key;
    }
  }
  c.expect(p_se172 >= 0 && p_one >= 0, "sweep rows missing");
  c.expect(p_se172 >= 2 * p_one,
           "p5000(0.175) not at least twice p5000(1.0)");
  c.expect(best_alpha < 0.5, "median overlap peaks at alpha >= 0.5");
}

// -------------------------------------------------------------------------
// 7. Sampling the optimized state solves rank-10 instances
// -------------------------------------------------------------------------
void criterion_sampling(Check &c) {
  ExperimentConfig cfg;
  cfg.seed = 1;
  cfg.ranks = {10};
  cfg.count = 32;
  cfg.alphas = {0.175};
  cfg.cost_variant = "zero-excluded-cvar";
  cfg.exact_cost = true;
  cfg.layers = 2;
  cfg.optimizer.max_iters = 500;
  cfg.optimizer.restarts = 2;
  cfg = resolve_config(Command::campaign, cfg);

  std::size_t solved = 0, with_targets = 0, errors = 0;
  for (std::size_t i = 0; i < cfg.count; ++i) {
    std::uint64_t iseed = derive_seed(derive_seed(cfg.seed, 10), i);
    VqeInstanceOutcome out =
        run_vqe_instance(cfg, 10, 0.175, iseed, derive_seed(iseed, 0));
    if (!out.ok) {
      ++errors;
      continue;
    }
    if (out.targets.empty())
      continue;
    ++with_targets;
    AnsatzSpec spec{10, cfg.layers, entangler_from_string(cfg.entangler)};
    StateVector state = apply_ansatz(spec, out.result.theta);
    auto draws = sample_bitstrings(state, 5000, derive_seed(iseed, 99));
    bool hit = false;
    for (std::uint64_t d : draws)
      if (std::binary_search(out.targets.begin(), out.targets.end(), d)) {
        hit = true;
        break;
      }
    solved += hit ? 1 : 0;
  }
  std::ostringstream line;
  line << solved << "/" << cfg.count << " solved within 5000 samples ("
       << with_targets << " with representable targets, " << errors
       << " errors)";
  c.note(line.str());
  c.expect(2 * solved >= cfg.count, "fewer than half solved");
}

// -------------------------------------------------------------------------
// 8. Dual-HKZ recursion: exact shortest vectors within the qubit budget
// -------------------------------------------------------------------------
void criterion_algorithm1(Check &c) {
  auto qubit_bound = [](double n) {
    return 1.5 * n * std::log2(n) - 2.26 * n + 4 * std::log2(n) + 20;
  };
  std::size_t solved = 0;
  int worst_margin_n = 0;
  double worst_margin = 1e9;
  for (std::uint64_t t = 0; t < 25; ++t) {
    std::size_t n = 4 + t % 5; // 4..8
    Basis b =
        t % 2 ? prepare_instance(n + 12, (n + 12) / 2, 65537, n,
                                 derive_seed(0xA0, t))
              : random_full_rank(n, derive_seed(0xA1, t), 12);
    AlgOneStats stats;
    Basis red = algorithm1_dual_hkz(b, &stats);
    Rat found(row_dot(red.rows, 0, red.rows, 0));
    if (found != shortest_vector(b).norm_sq) {
      c.expect(false, "missed lambda_1 at trial " + std::to_string(t));
      return;
    }
    double margin = qubit_bound(static_cast<double>(n)) - stats.max_enum_qubits;
    if (margin < worst_margin) {
      worst_margin = margin;
      worst_margin_n = static_cast<int>(n);
    }
    if (margin < 0) {
      c.expect(false, "enumeration width above the bound at n = " +
                          std::to_string(n));
      return;
    }
    ++solved;
  }
  std::ostringstream line;
  line << solved << "/25 exact, tightest qubit margin " << worst_margin
       << " at n = " << worst_margin_n;
  c.note(line.str());
  c.expect(solved == 25, "not every instance solved exactly");
}

// -------------------------------------------------------------------------
// 9. Invariant battery across the whole stack
// -------------------------------------------------------------------------
void criterion_invariants(Check &c) {
  // reduction invariants
  for (std::uint64_t s = 0; s < 5; ++s) {
    Basis b = random_full_rank(5, derive_seed(0x90, s), 30);
    Basis orig = b;
    lll(b);
    GsoResult r = gso(b);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < i; ++j) {
        Rat m = r.mu(i, j);
        if (m < 0)
          m = -m;
        c.expect(m <= Rat(1, 2), "LLL output not size-reduced");
      }
    c.expect(volume_sq(b) == volume_sq(orig), "LLL changed the volume");
  }
  // enumeration route agreement
  for (std::uint64_t s = 0; s < 5; ++s) {
    Basis b = random_full_rank(4, derive_seed(0x91, s), 5);
    c.expect(shortest_vector(b).norm_sq ==
                 shortest_gram(to_rat(gram(b))).norm_sq,
             "basis and Gram enumeration disagree");
  }
  // state-vector kernels: parallel == serial, bit for bit
  {
    Rng rng(7);
    AnsatzSpec spec{10, 2, Entangler::ring};
    std::vector<double> theta(spec.n_params());
    for (double &t : theta)
      t = rng.next_double() * 2 * M_PI;
    StateVector a = apply_ansatz(spec, theta);
    StateVector b = apply_ansatz_serial(spec, theta);
    bool same = a.dim() == b.dim();
    for (std::size_t i = 0; same && i < a.dim(); ++i)
      same = a.amp[i] == b.amp[i];
    c.expect(same, "parallel ansatz deviates from the serial reference");
    double norm = state_norm_sq(a);
    c.expect(std::abs(norm - 1.0) < 1e-10, "ansatz output not normalised");
  }
  // parallel experiment determinism
  {
    InclusionResult one = inclusion_probability(4, 4, "uniform", 8, 5, 1);
    InclusionResult many = inclusion_probability(4, 4, "uniform", 8, 5, 3);
    c.expect(one.probability == many.probability &&
                 one.included == many.included,
             "inclusion probability depends on the job count");

    ExperimentConfig cfg;
    cfg.seed = 11;
    cfg.jobs = 1;
    cfg.ranks = {3};
    cfg.count = 2;
    cfg.alphas = {0.5};
    cfg.exact_cost = true;
    cfg.optimizer.max_iters = 40;
    cfg.optimizer.restarts = 0;
    cfg = resolve_config(Command::campaign, cfg);
    std::ostringstream a, b;
    run_vqe_campaign(cfg, a);
    ExperimentConfig par = cfg;
    par.jobs = 2;
    run_vqe_campaign(par, b);
    c.expect(a.str() == b.str(), "campaign CSV depends on the job count");
  }
  // cost identities
  {
    std::vector<double> shots{0, 4, 4, 8};
    c.expect(aggregate_shot_costs(shots, CostVariant::mean, 1.0) == 4.0,
             "shot mean wrong");
    c.expect(aggregate_shot_costs(shots, CostVariant::cvar, 0.5) == 2.0,
             "shot CVaR wrong");
  }
  c.note("reduction, enumeration, kernels, determinism and cost identities");
}

struct Criterion {
  int id;
  const char *name;
  double budget_seconds;
  std::function<void(Check &)> fn;
};

} // namespace

int main(int argc, char **argv) {
  const std::vector<Criterion> criteria{
      {1, "QUBO, Ising and lattice norms agree exhaustively", 60,
       criterion_energy_equality},
      {2, "dual-basis bounds keep every ball point", 120,
       criterion_bounds_complete},
      {3, "penalty scheme: auxiliary minimum and ground state", 120,
       criterion_penalty},
      {4, "one-qubit-per-coefficient inclusion probabilities", 600,
       criterion_inclusion},
      {5, "dual-LLL qubit scaling follows the quadratic law", 600,
       criterion_scaling},
      {6, "CVaR sweep: small alpha dominates at rank 16", 7200,
       criterion_cvar_sweep},
      {7, "sampling the optimized state solves rank-10 instances", 1800,
       criterion_sampling},
      {8, "dual-HKZ recursion is exact within the qubit budget", 600,
       criterion_algorithm1},
      {9, "cross-module invariant battery", 600, criterion_invariants},
  };

  std::set<int> wanted;
  for (int i = 1; i < argc; ++i)
    wanted.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto &crit : criteria) {
    if (!wanted.empty() && !wanted.count(crit.id))
      continue;
    Check check;
    auto t0 = std::chrono::steady_clock::now();
    try {
      crit.fn(check);
    } catch (const std::exception &e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    if (secs > crit.budget_seconds)
      check.expect(false, "over time budget (" + std::to_string(secs) +
                              " s > " +
                              std::to_string(crit.budget_seconds) + " s)");
    std::printf("[%s] criterion %d: %s (%.1f s)\n",
                check.ok ? "PASS" : "FAIL", crit.id, crit.name, secs);
    for (const auto &n : check.notes)
      std::printf("       %s\n", n.c_str());
    std::fflush(stdout);
    failures += check.ok ? 0 : 1;
  }
  if (failures)
    std::printf("%d criterion(s) failed\n", failures);
  else
    std::printf("all criteria passed\n");
  return failures;
}
