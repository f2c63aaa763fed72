// Copyright 2026 The rdmc Authors
// SPDX-License-Identifier: Apache-2.0

#include "rdmc/experiment.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <utility>

#include "rdmc/io.hpp"

namespace rdmc {

namespace {

constexpr double kNonZeroTol = 1e-12;

// Minimal ordered JSON emitter. Doubles are written with 17 significant
// digits so that identical runs give byte-identical files.
class JsonObject {
 public:
  JsonObject& raw(const std::string& key, std::string value) {
    fields_.emplace_back(key, std::move(value));
    return *this;
  }
  JsonObject& number(const std::string& key, double x) {
    return raw(key, std::isfinite(x) ? format_double17(x) : "null");
  }
  JsonObject& integer(const std::string& key, long long x) {
    return raw(key, std::to_string(x));
  }
  JsonObject& unsigned_integer(const std::string& key, std::uint64_t x) {
    return raw(key, std::to_string(x));
  }
  JsonObject& boolean(const std::string& key, bool b) { return raw(key, b ? "true" : "false"); }
  JsonObject& string(const std::string& key, std::string_view s) {
    std::string quoted = "\"";
    for (char ch : s) {
      if (ch == '"' || ch == '\\') quoted += '\\';
      quoted += ch;
    }
    return raw(key, quoted + "\"");
  }
  JsonObject& object(const std::string& key, const JsonObject& child) {
    return raw(key, child.str(indent_ + 1));
  }
  JsonObject& numbers(const std::string& key, const std::vector<double>& xs) {
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      out += (i ? ", " : "") + (std::isfinite(xs[i]) ? format_double17(xs[i]) : "null");
    }
    return raw(key, out + "]");
  }

  std::string str(int indent = 0) const {
    const std::string pad(2 * (indent + 1), ' ');
    std::string out = "{\n";
    for (std::size_t i = 0; i < fields_.size(); ++i) {
      out += pad + "\"" + fields_[i].first + "\": " + fields_[i].second;
      out += (i + 1 < fields_.size()) ? ",\n" : "\n";
    }
    return out + std::string(2 * indent, ' ') + "}";
  }

  void set_indent(int indent) { indent_ = indent; }

 private:
  int indent_ = 0;
  std::vector<std::pair<std::string, std::string>> fields_;
};

JsonObject child_object() {
  JsonObject o;
  o.set_indent(1);
  return o;
}

[[noreturn]] void io_failure(const std::exception& e) {
  throw ExperimentError("io_error", e.what());
}

template <typename F>
void guarded_io(F&& write) {
  try {
    write();
  } catch (const ExperimentError&) {
    throw;
  } catch (const std::filesystem::filesystem_error& e) {
    io_failure(e);
  } catch (const FormatError& e) {
    io_failure(e);
  } catch (const std::ios_base::failure& e) {
    io_failure(e);
  } catch (const std::runtime_error& e) {
    io_failure(e);
  }
}

RdmProbe make_probe(const ModelAnalysis& model, std::vector<PairPosition> positions) {
  if (model.eigenbasis) return RdmProbe(model.basis, std::move(positions), *model.eigenbasis);
  return RdmProbe(model.basis, std::move(positions));
}

TwoRDM rdm_in_configured_basis(const Eigen::VectorXcd& psi, const ModelAnalysis& model) {
  TwoRDM site = two_rdm_from_state(psi, model.basis);
  return model.eigenbasis ? to_eigenbasis(site, *model.eigenbasis) : site;
}

std::vector<std::complex<double>> values_at(const TwoRDM& gamma,
                                            const std::vector<PairPosition>& positions) {
  std::vector<std::complex<double>> out;
  out.reserve(positions.size());
  for (const PairPosition& p : positions) out.push_back(gamma(p));
  return out;
}

double expectation(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& psi) {
  return psi.dot(h * psi).real();
}

std::uint64_t noise_seed_of(const ExperimentConfig& config) {
  return config.noise_seed.value_or(derive_seed(config.seed, 0, 0));
}

JsonObject model_json(const ExperimentConfig& config) {
  JsonObject m = child_object();
  m.integer("L", config.model.sites)
      .number("t", config.model.hopping)
      .number("U", config.model.interaction)
      .numbers("eps", config.model.onsite)
      .boolean("periodic", config.model.periodic)
      .raw("sector", "[" + std::to_string(config.sector.n_up) + ", " +
                         std::to_string(config.sector.n_dn) + "]");
  return m;
}

std::string summary_json(const ExperimentConfig& config, const ModelAnalysis& model,
                         const CompletionResult* completion) {
  JsonObject root;
  root.string("format", "rdmc-summary 1")
      .object("model", model_json(config))
      .string("basis", to_string(config.basis))
      .unsigned_integer("seed", config.seed)
      .integer("sector_dimension", static_cast<long long>(model.basis.size()));

  JsonObject counts = child_object();
  counts.integer("total", model.total_positions)
      .integer("sz_nonzero", model.sz_nonzero)
      .integer("critical", static_cast<long long>(model.subset.size()));
  root.object("counts", counts);

  root.number("ground_energy", model.ground.energy)
      .number("first_excited_energy", model.ground.first_excited_energy)
      .number("gap", model.ground.gap)
      .number("target_energy_from_rdm", energy_from_rdm(model.h2, model.target));

  if (completion != nullptr) {
    JsonObject noise = child_object();
    noise.number("epsilon", config.noise)
        .unsigned_integer("seed", noise_seed_of(config))
        .boolean("symmetrize", config.symmetrize_noise);
    root.object("noise", noise);

    const AnnealTrace& t = completion->trace;
    JsonObject c = child_object();
    c.string("initial_state", to_string(config.initial_state))
        .integer("pool_size", static_cast<long long>(completion->pool_size))
        .integer("iterations", config.anneal.max_iterations)
        .integer("accepted_moves", t.accepted_moves)
        .integer("clamp_events", t.clamp_events)
        .number("d_min", completion->d_min)
        .integer("argmin_iteration", t.argmin_iteration)
        .number("final_partial_distance", t.final_distance)
        .number("d_subset_noiseless", completion->d_subset_clean)
        .number("d_full", completion->d_full_clean)
        .number("infidelity", completion->infidelity)
        .number("energy_deviation", completion->energy_deviation);
    root.object("completion", c);
  }
  return root.str() + "\n";
}

void prepare_directory(const std::filesystem::path& dir) {
  guarded_io([&] { std::filesystem::create_directories(dir); });
}

void write_heatmaps(const ExperimentConfig& config, const std::string& stem,
                    const TwoRDM& gamma, const CriticalSubset& subset) {
  const HeatMapSheet sheet = emit_heatmap(gamma, subset, true);
  save_text(config.output_directory / (stem + ".csv"), heatmap_csv(sheet));
  if (config.svg) {
    save_text(config.output_directory / (stem + ".svg"), heatmap_svg(sheet, stem));
  }
}

}  // namespace

ModelAnalysis analyze_model(const ExperimentConfig& config) {
  config.validate();
  SectorBasis basis =
      enumerate_sector(config.model.sites, config.sector.n_up, config.sector.n_dn);
  if (basis.size() < 2) {
    throw ExperimentError("config_invalid",
                          "sector dimension is 1; there is nothing to complete");
  }
  Eigen::MatrixXcd h = build_hubbard(config.model, basis);
  GroundStateResult ground = ground_state(h, config.degeneracy_tol);
  if (ground.degenerate) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "ground state is degenerate (gap " << ground.gap << " <= tolerance "
        << config.degeneracy_tol
        << "); the critical subset determines the 2-RDM only for a non-degenerate "
           "ground state, so no completion is attempted";
    throw ExperimentError("degenerate_ground_state", msg.str());
  }

  TwoBodyReducedHamiltonian h2_site =
      reduce_to_two_body(config.model, config.sector.particles());
  TwoRDM target_site = two_rdm_from_state(ground.state, basis);

  std::optional<PairEigenbasis> eig;
  TwoBodyReducedHamiltonian h2 = h2_site;
  TwoRDM target = target_site;
  if (config.basis == BasisTag::pair_eigenbasis) {
    eig = pair_eigenbasis(h2_site);
    h2 = to_eigenbasis(h2_site, *eig);
    target = to_eigenbasis(target_site, *eig);
  }
  CriticalSubset subset = critical_subset(h2, config.subset_tol);

  const PairSpace& space = target_site.space;
  const int total = space.size() * space.size();
  const auto zero = sz_zero_pattern(space, config.sector);
  std::vector<char> forbidden(static_cast<std::size_t>(total), 0);
  for (const PairPosition& p : zero) {
    forbidden[static_cast<std::size_t>(p.row) * space.size() + p.col] = 1;
  }
  int sz_nonzero = 0;
  for (int r = 0; r < space.size(); ++r) {
    for (int c = 0; c < space.size(); ++c) {
      if (!forbidden[static_cast<std::size_t>(r) * space.size() + c] &&
          std::abs(target_site.elements(r, c)) > kNonZeroTol) {
        ++sz_nonzero;
      }
    }
  }

  return ModelAnalysis{
      .basis = std::move(basis),
      .hamiltonian = std::move(h),
      .ground = std::move(ground),
      .h2_site = std::move(h2_site),
      .eigenbasis = std::move(eig),
      .h2 = std::move(h2),
      .target_site = std::move(target_site),
      .target = std::move(target),
      .subset = std::move(subset),
      .total_positions = total,
      .sz_nonzero = sz_nonzero,
  };
}

Eigen::VectorXcd initial_state(const ExperimentConfig& config, const ModelAnalysis& model) {
  const auto dim = static_cast<Eigen::Index>(model.basis.size());
  switch (config.initial_state) {
    case InitialState::superposition:
      return (model.ground.state + model.ground.first_excited) / std::sqrt(2.0);
    case InitialState::random: {
      // Real amplitudes: the pool generators are real, so the search stays
      // in the real orbit that contains the (real) ground state.
      std::mt19937_64 rng(derive_seed(config.seed, 0, 2));
      std::normal_distribution<double> normal(0.0, 1.0);
      Eigen::VectorXcd psi(dim);
      for (Eigen::Index i = 0; i < dim; ++i) psi(i) = normal(rng);
      return psi / psi.norm();
    }
    case InitialState::file: {
      Eigen::VectorXcd psi;
      guarded_io([&] { psi = load_state(config.initial_state_file); });
      if (psi.size() != dim) {
        throw ExperimentError("config_invalid",
                              "initial state has dimension " + std::to_string(psi.size()) +
                                  ", sector has " + std::to_string(dim));
      }
      const double norm = psi.norm();
      if (!(norm > 0.0)) throw ExperimentError("config_invalid", "initial state is zero");
      return psi / norm;
    }
  }
  throw ExperimentError("config_invalid", "unknown initial state");
}

CompletionResult run_completion(const ExperimentConfig& config, const ModelAnalysis& model) {
  TwoRDM noisy = model.target;
  if (config.noise > 0.0) {
    noisy = add_noise(model.target,
                      NoiseSpec{config.noise, noise_seed_of(config), config.symmetrize_noise});
  }

  CompletionTarget target{make_probe(model, model.subset.members),
                          values_at(noisy, model.subset.members)};
  const auto everything = all_positions(model.target.space);
  const RdmProbe full_probe = make_probe(model, everything);
  AnnealReference reference{&full_probe, values_at(model.target, everything),
                            model.ground.state, model.ground.energy, model.hamiltonian};

  AnnealConfig schedule = config.anneal;
  schedule.seed = config.seed;
  const OperatorPool pool = build_pool(model.basis);
  AnnealTrace trace =
      anneal(target, initial_state(config, model), pool, schedule, &reference);

  TwoRDM completed = rdm_in_configured_basis(trace.best_state, model);
  const double d_subset = hs_distance(completed, model.target, model.subset);
  const double d_full = hs_distance(completed, model.target);
  const double inf = infidelity(trace.best_state, model.ground.state);
  const double e_dev =
      std::abs(expectation(model.hamiltonian, trace.best_state) - model.ground.energy);
  const double d_min = trace.d_min;
  return CompletionResult{
      .trace = std::move(trace),
      .completed = std::move(completed),
      .noisy_target = std::move(noisy),
      .d_min = d_min,
      .d_subset_clean = d_subset,
      .d_full_clean = d_full,
      .infidelity = inf,
      .energy_deviation = e_dev,
      .pool_size = pool.size(),
  };
}

ExperimentSummary run_target_analysis(const ExperimentConfig& config) {
  ModelAnalysis model = analyze_model(config);
  std::string json = summary_json(config, model, nullptr);
  prepare_directory(config.output_directory);
  guarded_io([&] {
    const auto& dir = config.output_directory;
    save_text(dir / "config.json", config_to_json(config));
    save_two_rdm(dir / "target_rdm.txt", model.target);
    save_subset(dir / "subset.txt", model.subset);
    write_heatmaps(config, "heatmap_target", model.target, model.subset);
    save_text(dir / "summary.json", json);
  });
  return ExperimentSummary{std::move(json), std::move(model), std::nullopt};
}

ExperimentSummary run_completion_experiment(const ExperimentConfig& config) {
  ModelAnalysis model = analyze_model(config);
  CompletionResult result = run_completion(config, model);
  std::string json = summary_json(config, model, &result);
  prepare_directory(config.output_directory);
  guarded_io([&] {
    const auto& dir = config.output_directory;
    save_text(dir / "config.json", config_to_json(config));
    save_two_rdm(dir / "target_rdm.txt", model.target);
    if (config.noise > 0.0) save_two_rdm(dir / "noisy_target_rdm.txt", result.noisy_target);
    save_subset(dir / "subset.txt", model.subset);
    save_two_rdm(dir / "final_rdm.txt", result.completed);
    save_state(dir / "final_state.txt", result.trace.best_state);
    std::ostringstream trace;
    write_trace_csv(trace, result.trace);
    save_text(dir / "trace.csv", trace.str());
    write_heatmaps(config, "heatmap_target", model.target, model.subset);
    write_heatmaps(config, "heatmap_final", result.completed, model.subset);
    save_text(dir / "summary.json", json);
  });
  return ExperimentSummary{std::move(json), std::move(model), std::move(result)};
}

std::vector<NoiseSweepRow> run_noise_sweep(const ExperimentConfig& config,
                                           const std::vector<double>& epsilons) {
  for (double eps : epsilons) {
    if (!(eps >= 0.0 && eps <= 0.1)) {
      throw ExperimentError("config_invalid", "sweep epsilons must lie in [0, 0.1]");
    }
  }
  const ModelAnalysis model = analyze_model(config);
  const OperatorPool pool = build_pool(model.basis);
  const Eigen::VectorXcd psi0 = initial_state(config, model);

  std::vector<NoiseSweepRow> rows(epsilons.size());
  std::vector<CompletionTarget> targets;
  targets.reserve(epsilons.size());
  std::vector<AnnealJob> jobs;
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    NoiseSweepRow& row = rows[i];
    row.epsilon = epsilons[i];
    row.noise_seed = derive_seed(config.seed, i, 0);
    row.anneal_seed = derive_seed(config.seed, i, 1);
    const TwoRDM noisy =
        add_noise(model.target, NoiseSpec{row.epsilon, row.noise_seed, config.symmetrize_noise});
    targets.push_back(CompletionTarget{make_probe(model, model.subset.members),
                                       values_at(noisy, model.subset.members)});
  }
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    AnnealConfig schedule = config.anneal;
    schedule.seed = rows[i].anneal_seed;
    jobs.push_back(AnnealJob{&targets[i], psi0, schedule, nullptr});
  }
  const auto traces = multi_start(jobs, pool, config.parallelism);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const TwoRDM completed = rdm_in_configured_basis(traces[i].best_state, model);
    rows[i].d_min_noisy = traces[i].d_min;
    rows[i].d_subset_clean = hs_distance(completed, model.target, model.subset);
    rows[i].d_full_clean = hs_distance(completed, model.target);
    rows[i].infidelity = infidelity(traces[i].best_state, model.ground.state);
  }
  return rows;
}

std::string noise_table_csv(const std::vector<NoiseSweepRow>& rows) {
  std::string out =
      "epsilon,noise_seed,anneal_seed,d_min_noisy,d_subset_noiseless,d_full_noiseless,"
      "d_min_noisy_sq,d_subset_noiseless_sq,d_full_noiseless_sq,infidelity\n";
  for (const NoiseSweepRow& r : rows) {
    out += format_double17(r.epsilon) + ',' + std::to_string(r.noise_seed) + ',' +
           std::to_string(r.anneal_seed) + ',' + format_double17(r.d_min_noisy) + ',' +
           format_double17(r.d_subset_clean) + ',' + format_double17(r.d_full_clean) + ',' +
           format_double17(r.d_min_noisy * r.d_min_noisy) + ',' +
           format_double17(r.d_subset_clean * r.d_subset_clean) + ',' +
           format_double17(r.d_full_clean * r.d_full_clean) + ',' +
           format_double17(r.infidelity) + '\n';
  }
  return out;
}

}  // namespace rdmc
