#include "svp/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "svp/common.hpp"
#include "svp/lattice.hpp"
#include "svp/reduction.hpp"
#include "svp/rng.hpp"

namespace svp {

namespace {

constexpr unsigned long kHarnessQ = 65537;

double mean_of(const std::vector<double> &v) {
  if (v.empty())
    return 0.0;
  double s = 0.0;
  for (double x : v)
    s += x;
  return s / static_cast<double>(v.size());
}

double sample_std(const std::vector<double> &v, double mean) {
  if (v.size() < 2)
    return 0.0;
  double s = 0.0;
  for (double x : v)
    s += (x - mean) * (x - mean);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

double median_of(std::vector<double> v) {
  if (v.empty())
    return 0.0;
  std::sort(v.begin(), v.end());
  std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

std::uint64_t instance_seed(std::uint64_t master, std::size_t rank,
                            std::size_t index) {
  return derive_seed(derive_seed(master, rank), index);
}

} // namespace

const char *to_string(Command c) {
  switch (c) {
  case Command::inclusion:
    return "inclusion";
  case Command::scaling:
    return "scaling";
  case Command::cvar_sweep:
    return "cvar-sweep";
  case Command::campaign:
    return "campaign";
  }
  return "?";
}

int effective_jobs(int jobs) {
  if (jobs > 0)
    return jobs;
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::string csv_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

CostVariant cost_variant_from_string(const std::string &s) {
  if (s == "mean")
    return CostVariant::mean;
  if (s == "cvar")
    return CostVariant::cvar;
  if (s == "zero-excluded-mean")
    return CostVariant::zero_excluded_mean;
  if (s == "zero-excluded-cvar")
    return CostVariant::zero_excluded_cvar;
  throw ParameterError("unknown cost variant '" + s + "'");
}

Entangler entangler_from_string(const std::string &s) {
  if (s == "chain")
    return Entangler::chain;
  if (s == "ring")
    return Entangler::ring;
  throw ParameterError("unknown entangler pattern '" + s + "'");
}

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

nlohmann::json config_to_json(const ExperimentConfig &cfg) {
  nlohmann::json j;
  j["seed"] = cfg.seed;
  j["jobs"] = cfg.jobs;
  j["out_dir"] = cfg.out_dir;
  j["ranks"] = cfg.ranks;
  j["count"] = cfg.count;
  j["budgets"] = cfg.budgets;
  j["strategies"] = cfg.strategies;
  j["dims"] = cfg.dims;
  j["reductions"] = cfg.reductions;
  j["repeats"] = cfg.repeats;
  j["gh_factor"] = cfg.gh_factor;
  j["alphas"] = cfg.alphas;
  j["layers"] = cfg.layers;
  j["entangler"] = cfg.entangler;
  j["cost_variant"] = cfg.cost_variant;
  j["exact_cost"] = cfg.exact_cost;
  j["shots"] = cfg.shots;
  j["sample_budget"] = cfg.sample_budget;
  j["optimizer"] = {{"max_iters", cfg.optimizer.max_iters},
                    {"restarts", cfg.optimizer.restarts},
                    {"tol", cfg.optimizer.tol},
                    {"patience", cfg.optimizer.patience},
                    {"initial_step", cfg.optimizer.initial_step}};
  return j;
}

ExperimentConfig config_from_json(const nlohmann::json &j) {
  ExperimentConfig cfg;
  cfg.seed = j.value("seed", cfg.seed);
  cfg.jobs = j.value("jobs", cfg.jobs);
  cfg.out_dir = j.value("out_dir", cfg.out_dir);
  cfg.ranks = j.value("ranks", cfg.ranks);
  cfg.count = j.value("count", cfg.count);
  cfg.budgets = j.value("budgets", cfg.budgets);
  cfg.strategies = j.value("strategies", cfg.strategies);
  cfg.dims = j.value("dims", cfg.dims);
  cfg.reductions = j.value("reductions", cfg.reductions);
  cfg.repeats = j.value("repeats", cfg.repeats);
  cfg.gh_factor = j.value("gh_factor", cfg.gh_factor);
  cfg.alphas = j.value("alphas", cfg.alphas);
  cfg.layers = j.value("layers", cfg.layers);
  cfg.entangler = j.value("entangler", cfg.entangler);
  cfg.cost_variant = j.value("cost_variant", cfg.cost_variant);
  cfg.exact_cost = j.value("exact_cost", cfg.exact_cost);
  cfg.shots = j.value("shots", cfg.shots);
  cfg.sample_budget = j.value("sample_budget", cfg.sample_budget);
  if (j.contains("optimizer")) {
    const auto &o = j.at("optimizer");
    cfg.optimizer.max_iters = o.value("max_iters", cfg.optimizer.max_iters);
    cfg.optimizer.restarts = o.value("restarts", cfg.optimizer.restarts);
    cfg.optimizer.tol = o.value("tol", cfg.optimizer.tol);
    cfg.optimizer.patience = o.value("patience", cfg.optimizer.patience);
    cfg.optimizer.initial_step =
        o.value("initial_step", cfg.optimizer.initial_step);
  }
  return cfg;
}

ExperimentConfig resolve_config(Command cmd, ExperimentConfig cfg) {
  switch (cmd) {
  case Command::inclusion:
    if (cfg.ranks.empty())
      cfg.ranks = {15, 20, 25};
    if (cfg.strategies.empty())
      cfg.strategies = {"uniform"};
    if (cfg.count == 0)
      cfg.count = 256;
    break;
  case Command::scaling:
    if (cfg.dims.empty())
      cfg.dims = {40, 60, 80};
    if (cfg.reductions.empty())
      cfg.reductions = {"lll"};
    if (cfg.repeats == 0)
      cfg.repeats = 5;
    break;
  case Command::cvar_sweep:
    if (cfg.ranks.empty())
      cfg.ranks = {16};
    if (cfg.alphas.empty())
      cfg.alphas = {0.05, 0.1, 0.175, 0.25, 0.5, 0.75, 1.0};
    if (cfg.count == 0)
      cfg.count = 64;
    break;
  case Command::campaign:
    if (cfg.ranks.empty())
      cfg.ranks = {6, 8, 10, 12, 14, 16};
    if (cfg.alphas.empty())
      cfg.alphas = {0.175};
    if (cfg.count == 0)
      cfg.count = 32;
    break;
  }
  return cfg;
}

double success_probability(const std::vector<double> &overlaps,
                           std::size_t samples) {
  if (overlaps.empty())
    return 0.0;
  double s = 0.0;
  for (double o : overlaps)
    s += 1.0 - std::pow(1.0 - std::min(1.0, std::max(0.0, o)),
                        static_cast<double>(samples));
  return s / static_cast<double>(overlaps.size());
}

// ---------------------------------------------------------------------------
// Inclusion tables
// ---------------------------------------------------------------------------

CampaignSummary run_inclusion_table(const ExperimentConfig &cfg_in,
                                    std::ostream &csv) {
  ExperimentConfig cfg = resolve_config(Command::inclusion, cfg_in);
  CampaignSummary summary;
  csv << "rank,qubits,strategy,probability,count,seed0\n";
  std::size_t row_index = 0;
  for (std::size_t rank : cfg.ranks) {
    std::vector<long> budgets = cfg.budgets;
    if (budgets.empty())
      budgets = {static_cast<long>(rank)};
    for (long budget : budgets) {
      for (const std::string &strategy : cfg.strategies) {
        std::uint64_t seed0 = derive_seed(cfg.seed, row_index);
        row_index += 1;
        InclusionResult r = inclusion_probability(
            rank, budget, strategy, cfg.count, seed0, effective_jobs(cfg.jobs));
        csv << rank << ',' << budget << ',' << strategy << ','
            << csv_double(r.probability) << ',' << r.evaluated << ',' << seed0
            << '\n';
        CampaignSummary::Row row;
        row.key = static_cast<double>(rank);
        row.label = strategy + "/" + std::to_string(budget);
        row.mean_overlap = r.probability;
        row.count = r.evaluated;
        row.errors = r.errors;
        summary.rows.push_back(std::move(row));
      }
    }
  }
  return summary;
}

// ---------------------------------------------------------------------------
// Qubit scaling
// ---------------------------------------------------------------------------

int dual_reduced_qubit_count(std::size_t n, const std::string &reduction,
                             std::uint64_t seed, double C) {
  if (n < 2)
    throw ParameterError("qubit scaling: dimension must be at least 2");
  const std::size_t k = n / 2;
  const std::size_t dk = n - k;
  const Int q = kHarnessQ;
  Basis b = sample_qary(n, k, q, seed);

  // Scaled dual of the q-ary block structure [[I, A~], [0, qI]]: the
  // rows of q * dual are [[q I, 0], [-A~^T, I]] (verified against
  // dual_basis in the tests); reducing this integer matrix reduces the
  // dual lattice up to the global 1/q scale.
  Basis dual;
  dual.rows = IntMat(n, n);
  for (std::size_t i = 0; i < dk; ++i)
    dual.rows(i, i) = q;
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < dk; ++i)
      dual.rows(dk + j, i) = -b.rows(i, dk + j);
    dual.rows(dk + j, dk + j) = 1;
  }

  if (reduction == "lll") {
    lll(dual);
  } else if (reduction.rfind("bkz-", 0) == 0) {
    int beta = std::atoi(reduction.c_str() + 4);
    if (beta < 2)
      throw ParameterError("qubit scaling: bad BKZ block size in '" +
                           reduction + "'");
    bkz(dual, static_cast<std::size_t>(beta));
  } else if (reduction == "pseudo-hkz") {
    pseudo_hkz(dual);
  } else if (reduction == "hkz") {
    hkz(dual);
  } else {
    throw ParameterError("qubit scaling: unknown reduction '" + reduction +
                         "'");
  }

  // A = C * gh of the primal lattice; vol = q^k by construction.
  const double qd = q.get_d();
  const double A = gh_from_log2_volsq(
      n, 2.0 * static_cast<double>(k) * std::log2(qd), C);
  std::vector<long> m(n);
  for (std::size_t i = 0; i < n; ++i) {
    double norm = std::sqrt(row_dot(dual.rows, i, dual.rows, i).get_d()) / qd;
    m[i] = bound_floor(A * norm);
  }
  return qubit_count(m);
}

CampaignSummary run_qubit_scaling(const ExperimentConfig &cfg_in,
                                  std::ostream &csv) {
  ExperimentConfig cfg = resolve_config(Command::scaling, cfg_in);
  for (const std::string &red : cfg.reductions)
    if (red != "lll" && red != "pseudo-hkz" && red != "hkz" &&
        !(red.rfind("bkz-", 0) == 0 && std::atoi(red.c_str() + 4) >= 2))
      throw ParameterError("qubit scaling: unknown reduction '" + red + "'");
  CampaignSummary summary;
  csv << "n,reduction,mean_qubits,std\n";

  struct Cell {
    std::size_t n;
    std::string reduction;
    std::size_t row;
    std::size_t rep;
  };
  std::vector<Cell> cells;
  std::size_t row_index = 0;
  for (std::size_t n : cfg.dims)
    for (const std::string &red : cfg.reductions) {
      for (std::size_t rep = 0; rep < cfg.repeats; ++rep)
        cells.push_back({n, red, row_index, rep});
      row_index += 1;
    }

  std::vector<double> values(cells.size(), -1.0); // -1 marks failure
#pragma omp parallel for schedule(dynamic) num_threads(effective_jobs(cfg.jobs))
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(cells.size()); ++t) {
    const Cell &c = cells[static_cast<std::size_t>(t)];
    std::uint64_t seed = derive_seed(derive_seed(cfg.seed, c.row), c.rep);
    try {
      values[static_cast<std::size_t>(t)] = static_cast<double>(
          dual_reduced_qubit_count(c.n, c.reduction, seed, cfg.gh_factor));
    } catch (const std::exception &) {
      // leave -1: counted as an error below
    }
  }

  row_index = 0;
  for (std::size_t n : cfg.dims)
    for (const std::string &red : cfg.reductions) {
      std::vector<double> qubits;
      std::size_t errors = 0;
      for (const Cell &c : cells)
        if (c.row == row_index) {
          double v = values[&c - cells.data()];
          if (v < 0.0)
            errors += 1;
          else
            qubits.push_back(v);
        }
      CampaignSummary::Row row;
      row.key = static_cast<double>(n);
      row.label = red;
      row.count = qubits.size();
      row.errors = errors;
      if (!qubits.empty()) {
        row.mean_qubits = mean_of(qubits);
        row.std_qubits = sample_std(qubits, row.mean_qubits);
        csv << n << ',' << red << ',' << csv_double(row.mean_qubits) << ','
            << csv_double(row.std_qubits) << '\n';
      }
      summary.rows.push_back(std::move(row));
      row_index += 1;
    }
  return summary;
}

// ---------------------------------------------------------------------------
// VQE experiments
// ---------------------------------------------------------------------------

VqeInstanceOutcome run_vqe_instance(const ExperimentConfig &cfg,
                                    std::size_t rank, double alpha,
                                    std::uint64_t inst_seed,
                                    std::uint64_t run_seed) {
  VqeInstanceOutcome out;
  try {
    const std::size_t d = rank + 12;
    Basis inst = prepare_instance(d, d / 2, kHarnessQ, rank, inst_seed);
    BoundsVector bounds = naive_mapping(rank, static_cast<long>(rank),
                                        "uniform", inst, inst_seed);
    IntegerEncoding enc = encode_integers(bounds, Scheme::plain);
    IntMat g = gram(inst);
    IsingHamiltonian ham = qubo_to_ising(build_qubo(g, enc));
    EvalTable table = build_eval_table(ham, &enc);
    out.targets = target_set(inst, enc);

    CostMode mode;
    mode.variant = cost_variant_from_string(cfg.cost_variant);
    mode.alpha = alpha;
    mode.exact = cfg.exact_cost;
    mode.shots = cfg.shots;
    mode.seed = run_seed;
    AnsatzSpec spec;
    spec.n_qubits = enc.n_vars;
    spec.layers = cfg.layers;
    spec.entangler = entangler_from_string(cfg.entangler);

    out.result = optimize(ham, spec, mode, cfg.optimizer, run_seed, &table,
                          &out.targets);
    out.overlap = out.result.overlap;
    out.iterations = out.result.iterations;
    out.converged = out.result.converged;
    out.ok = true;
  } catch (const std::exception &e) {
    out.error = e.what();
  }
  return out;
}

namespace {

struct VqeBatch {
  std::vector<double> overlaps;
  std::vector<double> iters;
  std::size_t errors = 0;
};

/// All (group x instance) VQE runs, parallel over the flat task list,
/// folded per group in deterministic config order.  group_alpha maps a
/// group index to (rank, alpha).
std::vector<VqeBatch>
run_vqe_grid(const ExperimentConfig &cfg,
             const std::vector<std::pair<std::size_t, double>> &groups,
             const std::vector<std::size_t> &alpha_index) {
  const std::size_t count = cfg.count;
  std::vector<VqeInstanceOutcome> outcomes(groups.size() * count);
#pragma omp parallel for schedule(dynamic) num_threads(effective_jobs(cfg.jobs))
  for (std::int64_t t = 0;
       t < static_cast<std::int64_t>(groups.size() * count); ++t) {
    const std::size_t g = static_cast<std::size_t>(t) / count;
    const std::size_t i = static_cast<std::size_t>(t) % count;
    const auto [rank, alpha] = groups[g];
    std::uint64_t iseed = instance_seed(cfg.seed, rank, i);
    std::uint64_t rseed = derive_seed(iseed, alpha_index[g]);
    outcomes[static_cast<std::size_t>(t)] =
        run_vqe_instance(cfg, rank, alpha, iseed, rseed);
  }
  std::vector<VqeBatch> batches(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g)
    for (std::size_t i = 0; i < count; ++i) {
      const VqeInstanceOutcome &o = outcomes[g * count + i];
      if (!o.ok) {
        batches[g].errors += 1;
        continue;
      }
      batches[g].overlaps.push_back(o.overlap);
      batches[g].iters.push_back(static_cast<double>(o.iterations));
    }
  return batches;
}

} // namespace

CampaignSummary run_cvar_sweep(const ExperimentConfig &cfg_in,
                               std::ostream &csv) {
  ExperimentConfig cfg = resolve_config(Command::cvar_sweep, cfg_in);
  const std::size_t rank = cfg.ranks.front();
  std::vector<std::pair<std::size_t, double>> groups;
  std::vector<std::size_t> alpha_index;
  for (std::size_t a = 0; a < cfg.alphas.size(); ++a) {
    groups.emplace_back(rank, cfg.alphas[a]);
    alpha_index.push_back(a);
  }
  std::vector<VqeBatch> batches = run_vqe_grid(cfg, groups, alpha_index);

  CampaignSummary summary;
  csv << "alpha,mean_overlap,median_overlap,p5000,count\n";
  for (std::size_t a = 0; a < cfg.alphas.size(); ++a) {
    const VqeBatch &b = batches[a];
    CampaignSummary::Row row;
    row.key = cfg.alphas[a];
    row.label = "rank-" + std::to_string(rank);
    row.mean_overlap = mean_of(b.overlaps);
    row.median_overlap = median_of(b.overlaps);
    row.std_overlap = sample_std(b.overlaps, row.mean_overlap);
    row.mean_iters = mean_of(b.iters);
    row.std_iters = sample_std(b.iters, row.mean_iters);
    row.p_samples = success_probability(b.overlaps, cfg.sample_budget);
    row.count = b.overlaps.size();
    row.errors = b.errors;
    row.overlaps = b.overlaps;
    csv << csv_double(row.key) << ',' << csv_double(row.mean_overlap) << ','
        << csv_double(row.median_overlap) << ',' << csv_double(row.p_samples)
        << ',' << row.count << '\n';
    summary.rows.push_back(std::move(row));
  }
  return summary;
}

CampaignSummary run_vqe_campaign(const ExperimentConfig &cfg_in,
                                 std::ostream &csv) {
  ExperimentConfig cfg = resolve_config(Command::campaign, cfg_in);
  const double alpha = cfg.alphas.front();
  std::vector<std::pair<std::size_t, double>> groups;
  std::vector<std::size_t> alpha_index;
  for (std::size_t rank : cfg.ranks) {
    groups.emplace_back(rank, alpha);
    alpha_index.push_back(0);
  }
  std::vector<VqeBatch> batches = run_vqe_grid(cfg, groups, alpha_index);

  CampaignSummary summary;
  csv << "rank,mean_overlap,std_overlap,mean_iters,std_iters,count\n";
  for (std::size_t g = 0; g < cfg.ranks.size(); ++g) {
    const VqeBatch &b = batches[g];
    CampaignSummary::Row row;
    row.key = static_cast<double>(cfg.ranks[g]);
    row.label = "alpha-" + csv_double(alpha);
    row.mean_overlap = mean_of(b.overlaps);
    row.median_overlap = median_of(b.overlaps);
    row.std_overlap = sample_std(b.overlaps, row.mean_overlap);
    row.mean_iters = mean_of(b.iters);
    row.std_iters = sample_std(b.iters, row.mean_iters);
    row.p_samples = success_probability(b.overlaps, cfg.sample_budget);
    row.count = b.overlaps.size();
    row.errors = b.errors;
    row.overlaps = b.overlaps;
    csv << cfg.ranks[g] << ',' << csv_double(row.mean_overlap) << ','
        << csv_double(row.std_overlap) << ',' << csv_double(row.mean_iters)
        << ',' << csv_double(row.std_iters) << ',' << row.count << '\n';
    summary.rows.push_back(std::move(row));
  }
  return summary;
}

} // namespace svp
