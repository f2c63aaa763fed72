// Copyright 2026 The rdmc Authors
// SPDX-License-Identifier: Apache-2.0

// rdmc: command-line front end of the completion experiments.
//
//   rdmc target   [options]   build the model, analyse the target 2-RDM
//   rdmc complete [options]   anneal toward the critical-subset target
//   rdmc sweep    [options]   noise-robustness table
//   rdmc heatmap  --rdm F     render a 2-RDM file as heat-map sheets
//
// A JSON config (--config) is read first; flags override its keys. Every
// failure prints one line "error: <code>: <message>" to stderr and exits
// non-zero (1 internal, 2 config_invalid/usage, 3 degenerate_ground_state,
// 4 io_error).

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "rdmc/experiment.hpp"
#include "rdmc/io.hpp"

namespace {

using rdmc::ExperimentConfig;
using rdmc::ExperimentError;

int exit_code_for(const std::string& code) {
  if (code == "config_invalid" || code == "usage") return 2;
  if (code == "degenerate_ground_state") return 3;
  if (code == "io_error") return 4;
  return 1;
}

int report(const std::string& code, std::string message) {
  for (char& ch : message) {
    if (ch == '\n' || ch == '\r') ch = ' ';
  }
  std::cerr << "error: " << code << ": " << message << '\n';
  return exit_code_for(code);
}

// Flag values; applied on top of the config only when given.
struct Overrides {
  std::string config_path;
  std::uint64_t seed = 1;
  int sites = 0;
  double hopping = 0.0;
  double interaction = 0.0;
  std::vector<double> eps;
  bool periodic = false;
  std::vector<int> sector;
  std::string basis;
  double noise = 0.0;
  std::uint64_t noise_seed = 0;
  bool no_symmetrize = false;
  double t0 = 0.0;
  double decay = 0.0;
  double theta0 = 0.0;
  double growth = 0.0;
  double shrink = 0.0;
  std::int64_t k_max = 0;
  std::int64_t stride = 0;
  std::string initial_state;
  std::string initial_state_file;
  int parallelism = 0;
  std::string out;
  bool svg = false;
};

struct Flags {
  CLI::Option* config = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* sites = nullptr;
  CLI::Option* hopping = nullptr;
  CLI::Option* interaction = nullptr;
  CLI::Option* eps = nullptr;
  CLI::Option* periodic = nullptr;
  CLI::Option* sector = nullptr;
  CLI::Option* basis = nullptr;
  CLI::Option* noise = nullptr;
  CLI::Option* noise_seed = nullptr;
  CLI::Option* no_symmetrize = nullptr;
  CLI::Option* t0 = nullptr;
  CLI::Option* decay = nullptr;
  CLI::Option* theta0 = nullptr;
  CLI::Option* growth = nullptr;
  CLI::Option* shrink = nullptr;
  CLI::Option* k_max = nullptr;
  CLI::Option* stride = nullptr;
  CLI::Option* initial_state = nullptr;
  CLI::Option* initial_state_file = nullptr;
  CLI::Option* parallelism = nullptr;
  CLI::Option* out = nullptr;
  CLI::Option* svg = nullptr;
};

Flags add_experiment_flags(CLI::App* app, Overrides& o, bool anneal_flags) {
  Flags f;
  f.config = app->add_option("--config", o.config_path, "JSON configuration file");
  f.seed = app->add_option("--seed", o.seed, "Base seed (default 1)");
  f.sites = app->add_option("--L", o.sites, "Number of lattice sites");
  f.hopping = app->add_option("--t", o.hopping, "Hopping amplitude");
  f.interaction = app->add_option("--U", o.interaction, "On-site interaction");
  f.eps = app->add_option("--eps", o.eps, "On-site energies, one per spin-orbital")
              ->delimiter(',');
  f.periodic = app->add_flag("--periodic", o.periodic, "Close the chain into a ring");
  f.sector = app->add_option("--sector", o.sector, "Occupations n_up,n_dn")
                 ->expected(2)
                 ->delimiter(',');
  f.basis = app->add_option("--basis", o.basis, "site | pair-eigenbasis");
  f.out = app->add_option("--out", o.out, "Output directory");
  f.svg = app->add_flag("--svg", o.svg, "Also render heat maps as SVG");
  if (anneal_flags) {
    f.noise = app->add_option("--noise", o.noise, "Noise strength on the target");
    f.noise_seed = app->add_option("--noise-seed", o.noise_seed, "Seed of the noise draw");
    f.no_symmetrize =
        app->add_flag("--no-symmetrize", o.no_symmetrize, "Keep the raw noise matrix");
    f.t0 = app->add_option("--T0", o.t0, "Initial temperature");
    f.decay = app->add_option("--decay", o.decay, "Temperature decay per step");
    f.theta0 = app->add_option("--theta0", o.theta0, "Initial maximum angle");
    f.growth = app->add_option("--growth", o.growth, "Angle growth on acceptance");
    f.shrink = app->add_option("--shrink", o.shrink, "Angle shrink on rejection");
    f.k_max = app->add_option("--k-max", o.k_max, "Iteration budget");
    f.stride = app->add_option("--stride", o.stride, "Trace record stride");
    f.initial_state = app->add_option("--initial-state", o.initial_state,
                                      "superposition | random | file");
    f.initial_state_file =
        app->add_option("--initial-state-file", o.initial_state_file, "State file");
    f.parallelism = app->add_option("--parallelism", o.parallelism, "Worker threads");
  }
  return f;
}

bool given(const CLI::Option* opt) { return opt != nullptr && opt->count() > 0; }

ExperimentConfig resolve_config(const Flags& f, const Overrides& o) {
  ExperimentConfig c = given(f.config) ? rdmc::load_config(o.config_path) : ExperimentConfig{};
  if (given(f.seed)) c.seed = o.seed;
  if (given(f.sites)) {
    c.model.sites = o.sites;
    if (!given(f.eps)) c.model.onsite.assign(2 * std::max(o.sites, 0), 0.0);
  }
  if (given(f.hopping)) c.model.hopping = o.hopping;
  if (given(f.interaction)) c.model.interaction = o.interaction;
  if (given(f.eps)) c.model.onsite = o.eps;
  if (given(f.periodic)) c.model.periodic = o.periodic;
  if (given(f.sector)) c.sector = {o.sector.at(0), o.sector.at(1)};
  if (given(f.basis)) {
    try {
      c.basis = rdmc::basis_tag_from_string(o.basis);
    } catch (const std::invalid_argument& e) {
      throw ExperimentError("config_invalid", e.what());
    }
  }
  if (given(f.noise)) c.noise = o.noise;
  if (given(f.noise_seed)) c.noise_seed = o.noise_seed;
  if (given(f.no_symmetrize)) c.symmetrize_noise = false;
  if (given(f.t0)) c.anneal.initial_temperature = o.t0;
  if (given(f.decay)) c.anneal.temperature_decay = o.decay;
  if (given(f.theta0)) c.anneal.initial_max_angle = o.theta0;
  if (given(f.growth)) c.anneal.angle_growth = o.growth;
  if (given(f.shrink)) c.anneal.angle_shrink = o.shrink;
  if (given(f.k_max)) c.anneal.max_iterations = o.k_max;
  if (given(f.stride)) c.anneal.record_stride = o.stride;
  if (given(f.initial_state)) c.initial_state = rdmc::initial_state_from_string(o.initial_state);
  if (given(f.initial_state_file)) c.initial_state_file = o.initial_state_file;
  if (given(f.parallelism)) c.parallelism = o.parallelism;
  if (given(f.out)) c.output_directory = o.out;
  if (given(f.svg)) c.svg = o.svg;
  c.validate();
  return c;
}

// Runs a file operation, reporting any failure as an io_error.
template <typename F>
auto io_step(F&& step) {
  try {
    return step();
  } catch (const std::runtime_error& e) {
    throw ExperimentError("io_error", e.what());
  }
}

int run_heatmap(const std::string& rdm_path, const std::string& subset_path, bool split,
                const std::string& out_csv, const std::string& out_svg) {
  rdmc::TwoRDM gamma = io_step([&] { return rdmc::load_two_rdm(rdm_path); });
  rdmc::CriticalSubset subset{gamma.basis, gamma.space.size(), {}};
  if (!subset_path.empty()) subset = io_step([&] { return rdmc::load_subset(subset_path); });
  if (split && subset_path.empty()) {
    throw ExperimentError("config_invalid", "--split needs --subset");
  }
  if (split && (subset.dim != gamma.space.size() || subset.basis != gamma.basis)) {
    throw ExperimentError("config_invalid", "subset does not match the 2-RDM");
  }
  const rdmc::HeatMapSheet sheet = rdmc::emit_heatmap(gamma, subset, split);
  io_step([&] {
    rdmc::save_text(out_csv, rdmc::heatmap_csv(sheet));
    if (!out_svg.empty()) rdmc::save_text(out_svg, rdmc::heatmap_svg(sheet, rdm_path));
    return 0;
  });
  std::cout << "wrote " << out_csv << (out_svg.empty() ? "" : " and " + out_svg) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-particle reduced density matrix completion for Hubbard chains"};
  app.require_subcommand(1);

  Overrides target_o, complete_o, sweep_o;
  CLI::App* target = app.add_subcommand("target", "Build the model and analyse the target");
  const Flags target_f = add_experiment_flags(target, target_o, false);
  CLI::App* complete = app.add_subcommand("complete", "Complete the 2-RDM by annealing");
  const Flags complete_f = add_experiment_flags(complete, complete_o, true);
  CLI::App* sweep = app.add_subcommand("sweep", "Noise-robustness table");
  const Flags sweep_f = add_experiment_flags(sweep, sweep_o, true);
  std::vector<double> epsilons{0.0, 1e-3, 1e-2, 1e-1};
  sweep->add_option("--epsilons", epsilons, "Noise strengths")->delimiter(',');

  CLI::App* heatmap = app.add_subcommand("heatmap", "Render a 2-RDM file as a heat map");
  std::string rdm_path, subset_path, out_csv = "heatmap.csv", out_svg;
  bool split = false;
  heatmap->add_option("--rdm", rdm_path, "2-RDM file")->required();
  heatmap->add_option("--subset", subset_path, "Critical-subset file");
  heatmap->add_flag("--split", split, "Subset below the diagonal, complement above");
  heatmap->add_option("--out", out_csv, "Output CSV path");
  heatmap->add_option("--svg", out_svg, "Optional SVG output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report("usage", e.what());
  }

  try {
    if (target->parsed()) {
      const ExperimentConfig config = resolve_config(target_f, target_o);
      const auto summary = rdmc::run_target_analysis(config);
      std::cout << summary.json;
      return 0;
    }
    if (complete->parsed()) {
      const ExperimentConfig config = resolve_config(complete_f, complete_o);
      const auto summary = rdmc::run_completion_experiment(config);
      std::cout << summary.json;
      return 0;
    }
    if (sweep->parsed()) {
      const ExperimentConfig config = resolve_config(sweep_f, sweep_o);
      const auto rows = rdmc::run_noise_sweep(config, epsilons);
      const std::string table = rdmc::noise_table_csv(rows);
      io_step([&] {
        std::filesystem::create_directories(config.output_directory);
        rdmc::save_text(config.output_directory / "config.json", rdmc::config_to_json(config));
        rdmc::save_text(config.output_directory / "noise_table.csv", table);
        return 0;
      });
      std::cout << table;
      return 0;
    }
    if (heatmap->parsed()) return run_heatmap(rdm_path, subset_path, split, out_csv, out_svg);
  } catch (const ExperimentError& e) {
    return report(e.code(), e.what());
  } catch (const rdmc::FormatError& e) {
    return report("io_error", e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return report("io_error", e.what());
  } catch (const std::invalid_argument& e) {
    return report("config_invalid", e.what());
  } catch (const std::exception& e) {
    return report("internal", e.what());
  }
  return report("usage", "no subcommand");
}
