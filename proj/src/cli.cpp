#include "svp/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "svp/common.hpp"
#include "svp/enumerate.hpp"
#include "svp/harness.hpp"
#include "svp/lattice.hpp"
#include "svp/reduction.hpp"
#include "svp/rng.hpp"

namespace svp {

namespace {

Basis load_basis(const std::string &path) {
  Basis b = read_basis_file(path);
  if (b.rank() == 0)
    throw ParameterError("basis file '" + path + "' is empty");
  return b;
}

void emit_basis(const Basis &b, const std::string &out) {
  if (out.empty()) {
    std::cout << basis_to_string(b) << "\n";
  } else {
    write_basis_file(out, b);
    std::cerr << "wrote " << out << "\n";
  }
}

double resolve_radius(const Basis &b, const std::string &spec, double C) {
  if (spec == "gh")
    return gaussian_heuristic(b, C);
  try {
    std::size_t used = 0;
    double v = std::stod(spec, &used);
    if (used == spec.size() && v > 0.0)
      return v;
  } catch (const std::exception &) {
  }
  throw ParameterError("--A expects 'gh' or a positive number, got '" + spec +
                       "'");
}

nlohmann::json result_to_json(const VqeRunResult &r) {
  return {{"theta", r.theta},
          {"final_cost", r.final_cost},
          {"iterations", r.iterations},
          {"cost_evals", r.cost_evals},
          {"trace", r.trace},
          {"converged", r.converged},
          {"overlap", r.overlap},
          {"seed", r.seed}};
}

void write_text(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw ParameterError("cannot write '" + path + "'");
  out << text;
}

struct ExperimentFlags {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  int jobs = 0;
  std::size_t count = 0;
  std::vector<std::size_t> ranks;
  std::vector<double> alphas;

  CLI::Option *opt_out_dir = nullptr;
  CLI::Option *opt_seed = nullptr;
  CLI::Option *opt_jobs = nullptr;
  CLI::Option *opt_count = nullptr;
  CLI::Option *opt_ranks = nullptr;
  CLI::Option *opt_alphas = nullptr;

  void attach(CLI::App *cmd) {
    cmd->add_option("--config", config_path, "JSON experiment config");
    opt_out_dir = cmd->add_option("--out-dir", out_dir, "output directory");
    opt_seed = cmd->add_option("--seed", seed, "master seed");
    opt_jobs = cmd->add_option("--jobs", jobs, "parallel jobs (0 = all cores)");
    opt_count = cmd->add_option("--count", count, "instances per row");
    opt_ranks = cmd->add_option("--ranks", ranks, "lattice ranks");
    opt_alphas = cmd->add_option("--alphas", alphas, "CVaR fractions");
  }

  ExperimentConfig build(Command cmd) const {
    ExperimentConfig cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in)
        throw ParameterError("cannot read config '" + config_path + "'");
      nlohmann::json j;
      in >> j;
      cfg = config_from_json(j);
    }
    if (opt_out_dir->count())
      cfg.out_dir = out_dir;
    if (opt_seed->count())
      cfg.seed = seed;
    if (opt_jobs->count())
      cfg.jobs = jobs;
    if (opt_count->count())
      cfg.count = count;
    if (opt_ranks->count())
      cfg.ranks = ranks;
    if (opt_alphas->count())
      cfg.alphas = alphas;
    return resolve_config(cmd, cfg);
  }
};

int run_experiment(Command cmd, const ExperimentConfig &cfg) {
  std::ostringstream csv;
  CampaignSummary summary;
  switch (cmd) {
  case Command::inclusion:
    summary = run_inclusion_table(cfg, csv);
    break;
  case Command::scaling:
    summary = run_qubit_scaling(cfg, csv);
    break;
  case Command::cvar_sweep:
    summary = run_cvar_sweep(cfg, csv);
    break;
  case Command::campaign:
    summary = run_vqe_campaign(cfg, csv);
    break;
  }
  std::filesystem::create_directories(cfg.out_dir);
  const std::string stem = cfg.out_dir + "/" + to_string(cmd);
  write_text(stem + ".csv", csv.str());
  write_text(stem + ".config.json", config_to_json(cfg).dump(2) + "\n");
  std::cout << csv.str();
  std::size_t errors = 0;
  for (const auto &row : summary.rows)
    errors += row.errors;
  std::cerr << "wrote " << stem << ".csv (" << summary.rows.size()
            << " rows, " << errors << " instance errors)\n";
  return 0;
}

} // namespace

int cli_main(const std::vector<std::string> &args) {
  CLI::App app{"SVP on small lattices via emulated VQE"};
  app.require_subcommand(1);

  // --- gen ------------------------------------------------------------
  auto *gen = app.add_subcommand("gen", "sample a q-ary lattice basis");
  struct {
    std::size_t d = 30, k = 15, n = 0;
    unsigned long q = 65537;
    std::uint64_t seed = 1;
    std::string out;
  } g;
  gen->add_option("--d", g.d, "dimension")->required();
  gen->add_option("--k", g.k, "q-ary block size")->required();
  gen->add_option("--q", g.q, "modulus");
  gen->add_option("--n", g.n,
                  "rank of the prepared sublattice (0 = raw full basis)");
  gen->add_option("--seed", g.seed, "seed");
  gen->add_option("--out", g.out, "output basis file (default stdout)");
  gen->callback([&] {
    Basis b = g.n == 0 ? sample_qary(g.d, g.k, Int(g.q), g.seed)
                       : prepare_instance(g.d, g.k, Int(g.q), g.n, g.seed);
    emit_basis(b, g.out);
  });

  // --- reduce ---------------------------------------------------------
  auto *red = app.add_subcommand("reduce", "reduce a basis");
  struct {
    std::string in, out, method = "lll";
    double delta = 0.99;
  } r;
  red->add_option("--in", r.in, "input basis file")->required();
  red->add_option("--method", r.method,
                  "lll | bkz-<beta> | hkz | pseudo-hkz | algorithm1");
  red->add_option("--delta", r.delta, "LLL parameter");
  red->add_option("--out", r.out, "output basis file (default stdout)");
  red->callback([&] {
    Basis b = load_basis(r.in);
    if (r.method == "lll") {
      LllStats st = lll(b, r.delta);
      std::cerr << "lll: " << st.swaps << " swaps, " << st.size_reductions
                << " size reductions\n";
    } else if (r.method.rfind("bkz-", 0) == 0) {
      int beta = std::atoi(r.method.c_str() + 4);
      if (beta < 2)
        throw ParameterError("bad BKZ block size in '" + r.method + "'");
      BkzStats st = bkz(b, static_cast<std::size_t>(beta), {}, r.delta);
      std::cerr << "bkz-" << beta << ": " << st.tours << " tours, "
                << st.insertions << " insertions\n";
    } else if (r.method == "hkz") {
      hkz(b);
    } else if (r.method == "pseudo-hkz") {
      pseudo_hkz(b);
    } else if (r.method == "algorithm1") {
      AlgOneStats st;
      b = algorithm1_dual_hkz(b, &st);
      std::cerr << "algorithm1: max enumeration qubits " << st.max_enum_qubits
                << ", " << st.enum_calls << " enumeration calls, "
                << st.escalations << " radius escalations\n";
    } else {
      throw ParameterError("unknown reduction method '" + r.method + "'");
    }
    emit_basis(b, r.out);
  });

  // --- bounds ---------------------------------------------------------
  auto *bnd = app.add_subcommand(
      "bounds", "coefficient bounds and qubit demand from the dual basis");
  struct {
    std::string in, radius = "gh";
    double C = 1.0;
  } bo;
  bnd->add_option("--in", bo.in, "input basis file")->required();
  bnd->add_option("--A", bo.radius, "enumeration radius: 'gh' or a number");
  bnd->add_option("--C", bo.C, "Gaussian heuristic factor");
  bnd->callback([&] {
    Basis b = load_basis(bo.in);
    double A = resolve_radius(b, bo.radius, bo.C);
    BoundsVector bounds = dual_bounds(b, A);
    std::cout << "A = " << csv_double(A) << "\n";
    std::cout << "i,m,bits\n";
    for (std::size_t i = 0; i < bounds.size(); ++i)
      std::cout << i << ',' << bounds.m[i] << ',' << bounds.bits[i] << '\n';
    std::cout << "qubits = " << qubit_count(bounds) << "\n";
    // defect is scale-invariant, so the integer-scaled dual works here
    RatMat dual = dual_basis(b);
    Basis scaled_dual;
    scaled_dual.rows = to_int_exact(scale(dual, Rat(common_denominator(dual))));
    std::cout << "qubit_bound = "
              << csv_double(qubit_budget_bound_log2(
                     b.rank(), orthogonality_defect_log2(scaled_dual), bo.C))
              << "\n";
  });

  // --- qubo -----------------------------------------------------------
  auto *qb = app.add_subcommand("qubo",
                                "emit the QUBO / Ising interchange JSON");
  struct {
    std::string in, out, radius = "gh", scheme = "plain", P = "auto";
    double C = 1.0;
    bool ising = false;
  } qo;
  qb->add_option("--in", qo.in, "input basis file")->required();
  qb->add_option("--A", qo.radius, "bound radius: 'gh' or a number");
  qb->add_option("--C", qo.C, "Gaussian heuristic factor");
  qb->add_option("--scheme", qo.scheme, "plain | penalty");
  qb->add_option("--P", qo.P, "penalty weight: 'auto' or a rational p/q");
  qb->add_flag("--ising", qo.ising, "emit the Ising form instead of QUBO");
  qb->add_option("--out", qo.out, "output JSON file (default stdout)");
  qb->callback([&] {
    Basis b = load_basis(qo.in);
    double A = resolve_radius(b, qo.radius, qo.C);
    BoundsVector bounds = dual_bounds(b, A);
    IntMat g = gram(b);
    nlohmann::json j;
    if (qo.scheme == "plain") {
      IntegerEncoding enc = encode_integers(bounds, Scheme::plain);
      QuboProblem q = build_qubo(g, enc);
      j = qo.ising ? ising_to_json(qubo_to_ising(q), &enc)
                   : qubo_to_json(q, &enc);
    } else if (qo.scheme == "penalty") {
      IntegerEncoding enc = encode_integers(bounds, Scheme::penalty);
      Rat P = qo.P == "auto" ? default_penalty_weight(b)
                             : rat_from_string(qo.P);
      QuboProblem q = build_penalty_qubo(g, enc, P);
      j = qo.ising ? ising_to_json(qubo_to_ising(q), &enc)
                   : qubo_to_json(q, &enc);
    } else {
      throw ParameterError("unknown encoding scheme '" + qo.scheme + "'");
    }
    if (qo.out.empty())
      std::cout << j.dump(2) << "\n";
    else {
      write_text(qo.out, j.dump(2) + "\n");
      std::cerr << "wrote " << qo.out << "\n";
    }
  });

  // --- vqe ------------------------------------------------------------
  auto *vq = app.add_subcommand("vqe", "run one VQE optimization");
  struct {
    std::string in, hamiltonian, out;
    std::string cost = "zero-excluded-cvar", entangler = "chain";
    double alpha = 0.175;
    bool sampled = false;
    int shots = 512, layers = 2, max_iters = 2000, restarts = 2;
    long budget = 0;
    std::string strategy = "uniform";
    std::size_t samples = 5000;
    std::uint64_t seed = 1;
  } v;
  vq->add_option("--in", v.in, "basis file (full pipeline)");
  vq->add_option("--hamiltonian", v.hamiltonian,
                 "Ising interchange JSON (skip encoding)");
  vq->add_option("--alpha", v.alpha, "CVaR fraction");
  vq->add_option("--cost", v.cost,
                 "mean | cvar | zero-excluded-mean | zero-excluded-cvar");
  vq->add_flag("--sampled", v.sampled,
               "sampled cost evaluation (default exact-distribution)");
  vq->add_option("--shots", v.shots, "shots per sampled evaluation");
  vq->add_option("--layers", v.layers, "ansatz layers");
  vq->add_option("--entangler", v.entangler, "chain | ring");
  vq->add_option("--budget", v.budget, "qubit budget (default = rank)");
  vq->add_option("--strategy", v.strategy, "qubit distribution strategy");
  vq->add_option("--samples", v.samples, "final solution sampling shots");
  vq->add_option("--seed", v.seed, "seed");
  vq->add_option("--max-iters", v.max_iters, "optimizer iteration cap");
  vq->add_option("--restarts", v.restarts, "optimizer random restarts");
  vq->add_option("--out", v.out, "result JSON file (default stdout)");
  vq->callback([&] {
    if (v.in.empty() == v.hamiltonian.empty())
      throw ParameterError("vqe needs exactly one of --in or --hamiltonian");
    CostMode mode;
    mode.variant = cost_variant_from_string(v.cost);
    mode.alpha = v.alpha;
    mode.exact = !v.sampled;
    mode.shots = v.shots;
    mode.seed = v.seed;
    OptimizerConfig ocfg;
    ocfg.max_iters = v.max_iters;
    ocfg.restarts = v.restarts;

    IsingHamiltonian ham;
    std::optional<IntegerEncoding> enc;
    std::optional<Basis> basis;
    if (!v.in.empty()) {
      basis = load_basis(v.in);
      long budget = v.budget > 0 ? v.budget
                                 : static_cast<long>(basis->rank());
      BoundsVector bounds = naive_mapping(basis->rank(), budget, v.strategy,
                                          *basis, v.seed);
      enc = encode_integers(bounds, Scheme::plain);
      ham = qubo_to_ising(build_qubo(gram(*basis), *enc));
    } else {
      std::ifstream in(v.hamiltonian);
      if (!in)
        throw ParameterError("cannot read '" + v.hamiltonian + "'");
      nlohmann::json j;
      in >> j;
      ham = j.value("kind", "ising") == "qubo"
                ? qubo_to_ising(qubo_from_json(j))
                : ising_from_json(j);
      if (j.contains("encoding"))
        enc = encoding_from_json(j.at("encoding"));
    }

    EvalTable table = build_eval_table(ham, enc ? &*enc : nullptr);
    std::vector<std::uint64_t> targets;
    if (basis && enc)
      targets = target_set(*basis, *enc);
    AnsatzSpec spec;
    spec.n_qubits = ham.n_vars;
    spec.layers = v.layers;
    spec.entangler = entangler_from_string(v.entangler);
    VqeRunResult res = optimize(ham, spec, mode, ocfg, v.seed, &table,
                                targets.empty() ? nullptr : &targets);

    nlohmann::json out = result_to_json(res);
    out["targets"] = targets.size();
    if (enc) {
      StateVector st = apply_ansatz(spec, res.theta);
      SampledSolution sol = sample_solution(
          st, static_cast<int>(v.samples), *enc, ham, derive_seed(v.seed, 1));
      out["solution"] = {{"found", sol.found}};
      if (sol.found) {
        out["solution"]["x"] = sol.x;
        out["solution"]["energy"] = rat_to_string(sol.energy);
        out["solution"]["bitstring"] = sol.bitstring;
      }
    }
    if (v.out.empty())
      std::cout << out.dump(2) << "\n";
    else {
      write_text(v.out, out.dump(2) + "\n");
      std::cerr << "wrote " << v.out << "\n";
    }
  });

  // --- experiments ----------------------------------------------------
  ExperimentFlags ic, sc, cv, cp;
  auto *inc = app.add_subcommand("inclusion", "inclusion probability table");
  ic.attach(inc);
  struct {
    std::vector<long> budgets;
    std::vector<std::string> strategies;
  } incx;
  inc->add_option("--budgets", incx.budgets, "qubit budgets per rank");
  inc->add_option("--strategies", incx.strategies,
                  "uniform | uniform-random | dual-scaled");
  inc->callback([&] {
    ExperimentConfig cfg = ic.build(Command::inclusion);
    if (!incx.budgets.empty())
      cfg.budgets = incx.budgets;
    if (!incx.strategies.empty())
      cfg.strategies = incx.strategies;
    run_experiment(Command::inclusion, cfg);
  });

  auto *sca = app.add_subcommand("scaling", "dual-reduction qubit scaling");
  sc.attach(sca);
  struct {
    std::vector<std::size_t> dims;
    std::vector<std::string> reductions;
    std::size_t repeats = 0;
  } scx;
  sca->add_option("--dims", scx.dims, "lattice dimensions");
  sca->add_option("--reductions", scx.reductions,
                  "lll | bkz-<beta> | pseudo-hkz | hkz");
  sca->add_option("--repeats", scx.repeats, "seeds per cell");
  sca->callback([&] {
    ExperimentConfig cfg = sc.build(Command::scaling);
    if (!scx.dims.empty())
      cfg.dims = scx.dims;
    if (!scx.reductions.empty())
      cfg.reductions = scx.reductions;
    if (scx.repeats > 0)
      cfg.repeats = scx.repeats;
    run_experiment(Command::scaling, cfg);
  });

  auto *swp = app.add_subcommand("cvar-sweep", "CVaR alpha sweep at one rank");
  cv.attach(swp);
  swp->callback(
      [&] { run_experiment(Command::cvar_sweep, cv.build(Command::cvar_sweep)); });

  auto *cam = app.add_subcommand("campaign", "VQE campaign across ranks");
  cp.attach(cam);
  cam->callback(
      [&] { run_experiment(Command::campaign, cp.build(Command::campaign)); });

  // ---------------------------------------------------------------------
  std::vector<const char *> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("svp-vqe");
  for (const std::string &a : args)
    argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ParameterError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

} // namespace svp
