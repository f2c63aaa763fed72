// Copyright 2026 The rdmc Authors
// SPDX-License-Identifier: Apache-2.0

// Experiment runner: target construction and analysis, completion runs,
// noise sweeps and heat-map sheets. Everything here is deterministic for a
// fixed configuration and seed.

#ifndef RDMC_EXPERIMENT_HPP_
#define RDMC_EXPERIMENT_HPP_

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rdmc/annealer.hpp"
#include "rdmc/hamiltonian.hpp"
#include "rdmc/rdm.hpp"

namespace rdmc {

// Failure with a stable machine-readable code, e.g. "config_invalid" or
// "degenerate_ground_state".
class ExperimentError : public std::runtime_error {
 public:
  ExperimentError(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

enum class InitialState { superposition, random, file };
std::string_view to_string(InitialState s);
InitialState initial_state_from_string(std::string_view s);

// Largest lattice the experiment runner accepts; the operator pool grows
// with the fourth power of the orbital count.
inline constexpr int kMaxExperimentSites = 5;

// Defaults reproduce the reference completion run.
struct ExperimentConfig {
  HubbardParams model = reference_model();
  SectorSpec sector = reference_sector();
  BasisTag basis = BasisTag::site;

  double noise = 0.0;
  std::optional<std::uint64_t> noise_seed;  // derived from `seed` when unset
  bool symmetrize_noise = true;

  AnnealConfig anneal;  // anneal.seed is overwritten from `seed`
  InitialState initial_state = InitialState::superposition;
  std::string initial_state_file;

  std::uint64_t seed = 1;
  double degeneracy_tol = 1e-8;
  double subset_tol = 1e-12;
  int parallelism = 1;

  std::filesystem::path output_directory = "rdmc-out";
  bool svg = false;

  // Throws ExperimentError("config_invalid", ...).
  void validate() const;
};

// Parses the JSON configuration; unknown keys are errors. Missing keys keep
// their defaults. Throws ExperimentError("config_invalid", ...).
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const ExperimentConfig& config);

// Seed for row `index` of a sweep, `stream` separating independent uses.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index, std::uint64_t stream);

// Everything derived from the model before any annealing.
struct ModelAnalysis {
  SectorBasis basis;
  Eigen::MatrixXcd hamiltonian;
  GroundStateResult ground;
  TwoBodyReducedHamiltonian h2_site;
  std::optional<PairEigenbasis> eigenbasis;
  TwoBodyReducedHamiltonian h2;  // in the configured basis
  TwoRDM target_site;
  TwoRDM target;                 // in the configured basis
  CriticalSubset subset;

  int total_positions = 0;
  int sz_nonzero = 0;  // site-basis positions allowed by S_z and non-zero
};

// Throws ExperimentError("degenerate_ground_state", ...) when the gap is
// at or below config.degeneracy_tol.
ModelAnalysis analyze_model(const ExperimentConfig& config);

struct CompletionResult {
  AnnealTrace trace;
  TwoRDM completed;          // 2-RDM of the best state, configured basis
  TwoRDM noisy_target;       // equals the target when noise = 0
  double d_min = 0.0;        // partial distance to the (noisy) target
  double d_subset_clean = 0.0;
  double d_full_clean = 0.0;
  double infidelity = 0.0;
  double energy_deviation = 0.0;
  std::size_t pool_size = 0;
};

Eigen::VectorXcd initial_state(const ExperimentConfig& config, const ModelAnalysis& model);

CompletionResult run_completion(const ExperimentConfig& config, const ModelAnalysis& model);

struct ExperimentSummary {
  std::string json;
  ModelAnalysis model;
  std::optional<CompletionResult> completion;
};

// `target` bundle: target 2-RDM, subset file and summary.json.
ExperimentSummary run_target_analysis(const ExperimentConfig& config);

// Full bundle: target and completed 2-RDMs, subset, trace.csv, heat-map
// sheets and summary.json in config.output_directory.
ExperimentSummary run_completion_experiment(const ExperimentConfig& config);

struct NoiseSweepRow {
  double epsilon = 0.0;
  std::uint64_t noise_seed = 0;
  std::uint64_t anneal_seed = 0;
  double d_min_noisy = 0.0;      // critical subset vs noisy target
  double d_subset_clean = 0.0;   // critical subset vs noiseless target
  double d_full_clean = 0.0;     // all positions vs noiseless target
  double infidelity = 0.0;
};

// One annealing run per epsilon (epsilons in [0, 0.1]); row i uses seeds
// derive_seed(config.seed, i, 0) for noise and derive_seed(config.seed, i, 1)
// for the chain. Rows may run in parallel; results do not depend on it.
std::vector<NoiseSweepRow> run_noise_sweep(const ExperimentConfig& config,
                                           const std::vector<double>& epsilons);

// CSV with both the Hilbert-Schmidt distances and their squares.
std::string noise_table_csv(const std::vector<NoiseSweepRow>& rows);

// Magnitude grid of a 2-RDM. With `split`, cells below the diagonal show
// subset members and cells above show the complement; the other cells are
// zero. Diagonal cells show their value when it belongs to the subset.
struct HeatMapSheet {
  int dim = 0;
  bool split = false;
  std::vector<double> values;  // row-major dim x dim
  double at(int r, int c) const { return values[static_cast<std::size_t>(r) * dim + c]; }
};

HeatMapSheet emit_heatmap(const TwoRDM& gamma, const CriticalSubset& subset, bool split);
std::string heatmap_csv(const HeatMapSheet& sheet);
// Self-contained SVG, colors normalized to the sheet maximum.
std::string heatmap_svg(const HeatMapSheet& sheet, const std::string& title);

}  // namespace rdmc

#endif  // RDMC_EXPERIMENT_HPP_
