/* harness.hpp — seeded batch experiments behind the CLI: inclusion
 * probability tables, dual-reduction qubit scaling, CVaR alpha sweeps and
 * full VQE campaigns.  Every runner derives one seed per instance from
 * the master seed, so parallel (--jobs) and serial execution produce
 * byte-identical CSV output.
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "svp/vqe.hpp"

namespace svp {

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

enum class Command { inclusion, scaling, cvar_sweep, campaign };
const char *to_string(Command c);

/// One config type covers all experiment subcommands; each runner reads
/// the fields relevant to it (resolve_config fills command defaults).
/// Instances are q-ary lattices with d = rank + 12, k = d / 2, q = 65537
/// throughout (the scaling runner instead uses full-rank d = n, k = n/2).
struct ExperimentConfig {
  std::uint64_t seed = 1;
  int jobs = 0; // 0 = all logical cores
  std::string out_dir = ".";

  std::vector<std::size_t> ranks;
  std::size_t count = 0;

  // inclusion
  std::vector<long> budgets; // empty: one qubit per coefficient (= rank)
  std::vector<std::string> strategies;

  // scaling
  std::vector<std::size_t> dims;
  std::vector<std::string> reductions; // lll | bkz-<beta> | pseudo-hkz | hkz
  std::size_t repeats = 5;
  double gh_factor = 1.0; // C in A = C * gh

  // vqe
  std::vector<double> alphas;
  int layers = 2;
  std::string entangler = "chain";
  std::string cost_variant = "zero-excluded-cvar";
  bool exact_cost = true;
  int shots = 512;
  std::size_t sample_budget = 5000; // S in p_S = mean(1 - (1-overlap)^S)
  OptimizerConfig optimizer;

  bool operator==(const ExperimentConfig &) const = default;
};

nlohmann::json config_to_json(const ExperimentConfig &cfg);
ExperimentConfig config_from_json(const nlohmann::json &j);

/// Fill empty fields with the command's defaults (idempotent); the CSV
/// sidecar records the resolved form.
ExperimentConfig resolve_config(Command cmd, ExperimentConfig cfg);

// ---------------------------------------------------------------------------
// Results
// ---------------------------------------------------------------------------

struct CampaignSummary {
  struct Row {
    double key = 0.0; // rank, alpha or dimension
    std::string label;
    double mean_overlap = 0.0;
    double median_overlap = 0.0;
    double std_overlap = 0.0;
    double mean_iters = 0.0;
    double std_iters = 0.0;
    double p_samples = 0.0; // mean over instances of 1 - (1-overlap)^S
    double mean_qubits = 0.0; // scaling rows only
    double std_qubits = 0.0;
    std::size_t count = 0;
    std::size_t errors = 0;
    std::vector<double> overlaps; // per instance, config order
  };
  std::vector<Row> rows;
};

/// mean over overlaps of 1 - (1 - o)^samples.
double success_probability(const std::vector<double> &overlaps,
                           std::size_t samples);

// ---------------------------------------------------------------------------
// Runners (CSV written to the stream; summary returned)
// ---------------------------------------------------------------------------

/// CSV: rank,qubits,strategy,probability,count,seed0 — one row per
/// (rank x budget x strategy); row seed0 = derive_seed(master, row index)
/// so each row alone reproduces via inclusion_probability.
CampaignSummary run_inclusion_table(const ExperimentConfig &cfg,
                                    std::ostream &csv);

/// CSV: n,reduction,mean_qubits,std — Lemma-1 qubit demand at A = C*gh
/// after reducing the dual basis, averaged over `repeats` seeds.
CampaignSummary run_qubit_scaling(const ExperimentConfig &cfg,
                                  std::ostream &csv);

/// CSV: alpha,mean_overlap,median_overlap,p5000,count — full VQE on the
/// same instance set for every alpha in the list.
CampaignSummary run_cvar_sweep(const ExperimentConfig &cfg, std::ostream &csv);

/// CSV: rank,mean_overlap,std_overlap,mean_iters,std_iters,count.
CampaignSummary run_vqe_campaign(const ExperimentConfig &cfg,
                                 std::ostream &csv);

// ---------------------------------------------------------------------------
// Shared pieces (exposed for the CLI and the test suite)
// ---------------------------------------------------------------------------

/// Lemma-1 qubit demand of one scaling sample: full-rank q-ary lattice of
/// dimension n, dual reduced with `reduction`, bounds at A = C * gh.
int dual_reduced_qubit_count(std::size_t n, const std::string &reduction,
                             std::uint64_t seed, double C);

struct VqeInstanceOutcome {
  bool ok = false;
  std::string error;
  double overlap = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  VqeRunResult result;
  std::vector<std::uint64_t> targets;
};

/// One VQE pipeline end to end: prepare_instance -> one qubit per
/// coefficient -> plain encoding -> Ising -> optimize -> overlap.
VqeInstanceOutcome run_vqe_instance(const ExperimentConfig &cfg,
                                    std::size_t rank, double alpha,
                                    std::uint64_t instance_seed,
                                    std::uint64_t run_seed);

/// Deterministic double formatting used in every CSV cell.
std::string csv_double(double v);

int effective_jobs(int jobs);

CostVariant cost_variant_from_string(const std::string &s);
Entangler entangler_from_string(const std::string &s);

} // namespace svp
