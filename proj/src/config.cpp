// Copyright 2026 The rdmc Authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "rdmc/experiment.hpp"

namespace rdmc {

namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& message) {
  throw ExperimentError("config_invalid", message);
}

void require_keys(const json& object, const std::string& where,
                  std::initializer_list<const char*> allowed) {
  if (!object.is_object()) invalid(where + " must be an object");
  const std::set<std::string> known(allowed.begin(), allowed.end());
  for (const auto& [key, value] : object.items()) {
    if (!known.contains(key)) invalid("unknown key '" + where + "." + key + "'");
  }
}

template <typename T>
T get_as(const json& object, const char* key, const std::string& where) {
  try {
    return object.at(key).get<T>();
  } catch (const json::exception&) {
    invalid("key '" + where + "." + key + "' has the wrong type");
  }
}

double get_number(const json& object, const char* key, const std::string& where) {
  const json& v = object.at(key);
  if (!v.is_number()) invalid("key '" + where + "." + key + "' must be a number");
  return v.get<double>();
}

std::int64_t get_integer(const json& object, const char* key, const std::string& where) {
  const json& v = object.at(key);
  if (!v.is_number_integer()) invalid("key '" + where + "." + key + "' must be an integer");
  return v.get<std::int64_t>();
}

std::uint64_t get_seed(const json& object, const char* key, const std::string& where) {
  const json& v = object.at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  invalid("key '" + where + "." + key + "' must be a non-negative integer");
}

void parse_model(const json& m, ExperimentConfig& c) {
  require_keys(m, "model", {"L", "t", "U", "eps", "periodic", "sector"});
  if (m.contains("L")) {
    c.model.sites = static_cast<int>(get_integer(m, "L", "model"));
    // A new lattice size without explicit energies means a homogeneous chain.
    if (!m.contains("eps")) c.model.onsite.assign(2 * std::max(c.model.sites, 0), 0.0);
  }
  if (m.contains("t")) c.model.hopping = get_number(m, "t", "model");
  if (m.contains("U")) c.model.interaction = get_number(m, "U", "model");
  if (m.contains("eps")) {
    const json& e = m.at("eps");
    if (!e.is_array()) invalid("key 'model.eps' must be an array");
    c.model.onsite.clear();
    for (const json& x : e) {
      if (!x.is_number()) invalid("key 'model.eps' must hold numbers");
      c.model.onsite.push_back(x.get<double>());
    }
  }
  if (m.contains("periodic")) c.model.periodic = get_as<bool>(m, "periodic", "model");
  if (m.contains("sector")) {
    const json& s = m.at("sector");
    if (!s.is_array() || s.size() != 2 || !s[0].is_number_integer() ||
        !s[1].is_number_integer()) {
      invalid("key 'model.sector' must be [n_up, n_dn]");
    }
    c.sector = {s[0].get<int>(), s[1].get<int>()};
  }
}

void parse_target(const json& t, ExperimentConfig& c) {
  require_keys(t, "target", {"noise", "noise_seed", "symmetrize"});
  if (t.contains("noise")) c.noise = get_number(t, "noise", "target");
  if (t.contains("noise_seed")) c.noise_seed = get_seed(t, "noise_seed", "target");
  if (t.contains("symmetrize")) c.symmetrize_noise = get_as<bool>(t, "symmetrize", "target");
}

void parse_anneal(const json& a, ExperimentConfig& c) {
  require_keys(a, "anneal",
               {"initial_temperature", "temperature_decay", "initial_max_angle",
                "angle_growth", "angle_shrink", "max_iterations", "record_stride",
                "initial_state", "initial_state_file"});
  auto& s = c.anneal;
  if (a.contains("initial_temperature")) {
    s.initial_temperature = get_number(a, "initial_temperature", "anneal");
  }
  if (a.contains("temperature_decay")) {
    s.temperature_decay = get_number(a, "temperature_decay", "anneal");
  }
  if (a.contains("initial_max_angle")) {
    s.initial_max_angle = get_number(a, "initial_max_angle", "anneal");
  }
  if (a.contains("angle_growth")) s.angle_growth = get_number(a, "angle_growth", "anneal");
  if (a.contains("angle_shrink")) s.angle_shrink = get_number(a, "angle_shrink", "anneal");
  if (a.contains("max_iterations")) {
    s.max_iterations = get_integer(a, "max_iterations", "anneal");
  }
  if (a.contains("record_stride")) s.record_stride = get_integer(a, "record_stride", "anneal");
  if (a.contains("initial_state")) {
    c.initial_state =
        initial_state_from_string(get_as<std::string>(a, "initial_state", "anneal"));
  }
  if (a.contains("initial_state_file")) {
    c.initial_state_file = get_as<std::string>(a, "initial_state_file", "anneal");
  }
}

void parse_analysis(const json& a, ExperimentConfig& c) {
  require_keys(a, "analysis", {"degeneracy_tol", "subset_tol"});
  if (a.contains("degeneracy_tol")) {
    c.degeneracy_tol = get_number(a, "degeneracy_tol", "analysis");
  }
  if (a.contains("subset_tol")) c.subset_tol = get_number(a, "subset_tol", "analysis");
}

void parse_output(const json& o, ExperimentConfig& c) {
  require_keys(o, "output", {"directory", "svg"});
  if (o.contains("directory")) {
    c.output_directory = get_as<std::string>(o, "directory", "output");
  }
  if (o.contains("svg")) c.svg = get_as<bool>(o, "svg", "output");
}

}  // namespace

std::string_view to_string(InitialState s) {
  switch (s) {
    case InitialState::superposition: return "superposition";
    case InitialState::random: return "random";
    case InitialState::file: return "file";
  }
  return "superposition";
}

InitialState initial_state_from_string(std::string_view s) {
  if (s == "superposition") return InitialState::superposition;
  if (s == "random") return InitialState::random;
  if (s == "file") return InitialState::file;
  throw ExperimentError("config_invalid", "unknown initial state '" + std::string(s) + "'");
}

void ExperimentConfig::validate() const {
  try {
    model.validate();
    anneal.validate();
  } catch (const std::invalid_argument& e) {
    invalid(e.what());
  }
  if (!(model.interaction > 0.0)) invalid("model.U must be positive");
  if (model.sites < 2 || model.sites > kMaxExperimentSites) {
    invalid("model.L must lie in [2, " + std::to_string(kMaxExperimentSites) + "]");
  }
  if (sector.n_up < 0 || sector.n_dn < 0 || sector.n_up > model.sites ||
      sector.n_dn > model.sites) {
    invalid("model.sector occupations must lie in [0, L]");
  }
  if (sector.particles() < 2) invalid("model.sector needs at least two particles");
  if (!(noise >= 0.0 && noise <= 0.1)) invalid("target.noise must lie in [0, 0.1]");
  if (!(degeneracy_tol >= 0.0)) invalid("analysis.degeneracy_tol must be >= 0");
  if (!(subset_tol >= 0.0)) invalid("analysis.subset_tol must be >= 0");
  if (parallelism < 1) invalid("parallelism must be >= 1");
  if (initial_state == InitialState::file && initial_state_file.empty()) {
    invalid("anneal.initial_state 'file' needs anneal.initial_state_file");
  }
  if (output_directory.empty()) invalid("output.directory must not be empty");
}

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    invalid(std::string("malformed JSON: ") + e.what());
  }
  ExperimentConfig c;
  require_keys(root, "config",
               {"model", "basis", "target", "anneal", "analysis", "seed", "parallelism",
                "output"});
  if (root.contains("model")) parse_model(root.at("model"), c);
  if (root.contains("basis")) {
    try {
      c.basis = basis_tag_from_string(get_as<std::string>(root, "basis", "config"));
    } catch (const std::invalid_argument& e) {
      invalid(e.what());
    }
  }
  if (root.contains("target")) parse_target(root.at("target"), c);
  if (root.contains("anneal")) parse_anneal(root.at("anneal"), c);
  if (root.contains("analysis")) parse_analysis(root.at("analysis"), c);
  if (root.contains("seed")) c.seed = get_seed(root, "seed", "config");
  if (root.contains("parallelism")) {
    c.parallelism = static_cast<int>(get_integer(root, "parallelism", "config"));
  }
  if (root.contains("output")) parse_output(root.at("output"), c);
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ExperimentError("io_error", "cannot read config '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string config_to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["model"] = {{"L", c.model.sites},
                {"t", c.model.hopping},
                {"U", c.model.interaction},
                {"eps", c.model.onsite},
                {"periodic", c.model.periodic},
                {"sector", {c.sector.n_up, c.sector.n_dn}}};
  j["basis"] = std::string(to_string(c.basis));
  j["target"] = {{"noise", c.noise}, {"symmetrize", c.symmetrize_noise}};
  if (c.noise_seed) j["target"]["noise_seed"] = *c.noise_seed;
  j["anneal"] = {{"initial_temperature", c.anneal.initial_temperature},
                 {"temperature_decay", c.anneal.temperature_decay},
                 {"initial_max_angle", c.anneal.initial_max_angle},
                 {"angle_growth", c.anneal.angle_growth},
                 {"angle_shrink", c.anneal.angle_shrink},
                 {"max_iterations", c.anneal.max_iterations},
                 {"record_stride", c.anneal.record_stride},
                 {"initial_state", std::string(to_string(c.initial_state))}};
  if (!c.initial_state_file.empty()) {
    j["anneal"]["initial_state_file"] = c.initial_state_file;
  }
  j["analysis"] = {{"degeneracy_tol", c.degeneracy_tol}, {"subset_tol", c.subset_tol}};
  j["seed"] = c.seed;
  j["parallelism"] = c.parallelism;
  j["output"] = {{"directory", c.output_directory.string()}, {"svg", c.svg}};
  return j.dump(2) + "\n";
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index, std::uint64_t stream) {
  // splitmix64 finalizer applied to a combination of the three inputs.
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(base) ^ index) ^ (stream * 0xd1b54a32d192ed03ULL));
}

}  // namespace rdmc
