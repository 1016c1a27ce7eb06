#include "acmrr/config.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <set>

#include <json.hpp>

#include "acmrr/errors.hpp"
#include "acmrr/io.hpp"

namespace acmrr::config {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& object, const std::set<std::string>& allowed,
                         const std::string& block) {
  for (const auto& [key, value] : object.items()) {
    if (!allowed.count(key)) {
      throw ValidationError("config: unknown key '" + key + "' in " + block);
    }
  }
}

double require_number(const json& object, const std::string& key, const std::string& block) {
  if (!object.at(key).is_number()) {
    throw ValidationError("config: key '" + key + "' in " + block + " must be a number");
  }
  return object.at(key).get<double>();
}

template <typename T>
void read_into(const json& object, const std::string& key, T& target) {
  if (object.contains(key)) target = object.at(key).get<T>();
}

void read_number(const json& object, const std::string& key, double& target,
                 const std::string& block) {
  if (object.contains(key)) target = require_number(object, key, block);
}

void read_optional_number(const json& object, const std::string& key,
                          std::optional<double>& target, const std::string& block) {
  if (object.contains(key)) target = require_number(object, key, block);
}

VaporBlock parse_vapor(const json& object) {
  reject_unknown_keys(object,
                      {"temperature_K", "transit_broadening_Hz", "density_override_m3",
                       "pressure_model", "line_file"},
                      "vapor");
  VaporBlock block;
  read_number(object, "temperature_K", block.temperature_k, "vapor");
  read_number(object, "transit_broadening_Hz", block.transit_broadening_hz, "vapor");
  read_optional_number(object, "density_override_m3", block.density_override_m3, "vapor");
  if (object.contains("pressure_model")) {
    const std::string name = object.at("pressure_model").get<std::string>();
    if (name == "nesmeyanov") block.pressure_model = vapor::VaporPressureModel::kNesmeyanov;
    else if (name == "alcock") block.pressure_model = vapor::VaporPressureModel::kAlcock;
    else throw ValidationError("config: unknown pressure_model '" + name + "'");
  }
  if (object.contains("line_file")) block.line_file = object.at("line_file").get<std::string>();
  return block;
}

RingBlock parse_ring(const json& object) {
  reject_unknown_keys(object,
                      {"radius_m", "n_eff", "resonance_wavelength_m", "coupling_r",
                       "round_trip_tau", "loaded_Q", "kappa_Hz", "contrast_delta_T",
                       "coupling_regime"},
                      "ring");
  RingBlock block;
  read_number(object, "radius_m", block.radius_m, "ring");
  read_number(object, "n_eff", block.n_eff, "ring");
  read_number(object, "resonance_wavelength_m", block.resonance_wavelength_m, "ring");
  read_optional_number(object, "coupling_r", block.coupling_r, "ring");
  read_optional_number(object, "round_trip_tau", block.round_trip_tau, "ring");
  read_optional_number(object, "loaded_Q", block.loaded_q, "ring");
  read_optional_number(object, "kappa_Hz", block.kappa_hz, "ring");
  read_number(object, "contrast_delta_T", block.contrast, "ring");
  if (object.contains("coupling_regime")) {
    const std::string name = object.at("coupling_regime").get<std::string>();
    if (name == "undercoupled") block.coupling_regime = cavity::CouplingRegime::kUndercoupled;
    else if (name == "overcoupled") block.coupling_regime = cavity::CouplingRegime::kOvercoupled;
    else throw ValidationError("config: unknown coupling_regime '" + name + "'");
  }

  // cross-check kappa against Q when both appear
  if (block.loaded_q && block.kappa_hz) {
    const double nu0 = 299792458.0 / block.resonance_wavelength_m;
    const double expected = nu0 / (2.0 * *block.loaded_q);
    if (std::abs(*block.kappa_hz - expected) > 0.01 * expected) {
      throw ValidationError(
          "config: ring keys kappa_Hz and loaded_Q are inconsistent by more than 1% "
          "(kappa = nu0 / (2 Q))");
    }
  }
  if (!block.loaded_q && !block.kappa_hz &&
      !(block.coupling_r && block.round_trip_tau)) {
    throw ValidationError(
        "config: ring needs either loaded_Q (or kappa_Hz) with contrast_delta_T, or "
        "explicit coupling_r and round_trip_tau");
  }
  return block;
}

ModeBlock parse_mode(const json& object) {
  reject_unknown_keys(object, {"g0_Hz", "decay_length_m", "interaction_volume_m3"}, "mode");
  ModeBlock block;
  read_number(object, "g0_Hz", block.g0_hz, "mode");
  read_optional_number(object, "decay_length_m", block.decay_length_m, "mode");
  read_number(object, "interaction_volume_m3", block.interaction_volume_m3, "mode");
  return block;
}

SimulationBlock parse_simulation(const json& object) {
  reject_unknown_keys(object,
                      {"n_configs", "seed", "detuning_min_Hz", "detuning_max_Hz",
                       "detuning_points", "atom_count_mode", "atom_count",
                       "shell_depth_factor", "gamma_Hz", "power_W", "cavity_detuning_Hz"},
                      "simulation");
  SimulationBlock block;
  read_into(object, "n_configs", block.n_configs);
  read_into(object, "seed", block.seed);
  read_number(object, "detuning_min_Hz", block.detuning_min_hz, "simulation");
  read_number(object, "detuning_max_Hz", block.detuning_max_hz, "simulation");
  read_into(object, "detuning_points", block.detuning_points);
  read_into(object, "atom_count_mode", block.atom_count_mode);
  if (object.contains("atom_count")) block.atom_count = object.at("atom_count").get<std::uint64_t>();
  read_number(object, "shell_depth_factor", block.shell_depth_factor, "simulation");
  read_number(object, "gamma_Hz", block.gamma_hz, "simulation");
  read_number(object, "power_W", block.power_w, "simulation");
  read_number(object, "cavity_detuning_Hz", block.cavity_detuning_hz, "simulation");

  if (block.n_configs < 1) throw ValidationError("config: n_configs must be >= 1");
  if (block.detuning_points < 2) throw ValidationError("config: detuning_points must be >= 2");
  if (!(block.detuning_max_hz > block.detuning_min_hz)) {
    throw ValidationError("config: detuning_max_Hz must exceed detuning_min_Hz");
  }
  if (block.atom_count_mode != "from_density" && block.atom_count_mode != "fixed" &&
      block.atom_count_mode != "poisson") {
    throw ValidationError("config: atom_count_mode must be from_density, fixed or poisson");
  }
  if (block.atom_count_mode == "fixed" && !block.atom_count) {
    throw ValidationError("config: atom_count_mode 'fixed' requires atom_count");
  }
  if (!(block.gamma_hz > 0)) throw ValidationError("config: gamma_Hz must be positive");
  if (!(block.shell_depth_factor > 0)) {
    throw ValidationError("config: shell_depth_factor must be positive");
  }
  return block;
}

SaturationBlock parse_saturation(const json& object) {
  reject_unknown_keys(object,
                      {"powers_W", "true_alpha0", "true_p_sat_W", "noise_fraction",
                       "input_files"},
                      "saturation");
  SaturationBlock block;
  if (object.contains("powers_W")) {
    block.powers_w = object.at("powers_W").get<std::vector<double>>();
  }
  read_number(object, "true_alpha0", block.true_alpha0, "saturation");
  read_number(object, "true_p_sat_W", block.true_p_sat_w, "saturation");
  read_number(object, "noise_fraction", block.noise_fraction, "saturation");
  if (object.contains("input_files")) {
    block.input_files = object.at("input_files").get<std::vector<std::string>>();
  }
  return block;
}

AllanBlock parse_allan(const json& object) {
  reject_unknown_keys(object,
                      {"noise_kind", "level_Hz", "n_samples", "sample_period_s",
                       "input_file", "input_sample_period_s"},
                      "allan");
  AllanBlock block;
  read_into(object, "noise_kind", block.noise_kind);
  read_number(object, "level_Hz", block.level_hz, "allan");
  read_into(object, "n_samples", block.n_samples);
  read_number(object, "sample_period_s", block.sample_period_s, "allan");
  if (object.contains("input_file")) block.input_file = object.at("input_file").get<std::string>();
  read_optional_number(object, "input_sample_period_s", block.input_sample_period_s, "allan");
  if (block.noise_kind != "white_fm" && block.noise_kind != "random_walk_fm") {
    throw ValidationError("config: noise_kind must be white_fm or random_walk_fm");
  }
  return block;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& error) {
    throw ValidationError(std::string("config: invalid JSON: ") + error.what());
  }
  if (!doc.is_object()) {
    throw ValidationError(
        "config: top level must be an object with the required key 'scenario' and blocks "
        "vapor / ring / mode / simulation / saturation / allan / output_directory");
  }
  reject_unknown_keys(doc,
                      {"scenario", "vapor", "ring", "mode", "simulation", "saturation",
                       "allan", "output_directory"},
                      "top level");
  if (!doc.contains("scenario")) {
    throw ValidationError(
        "config: missing required key 'scenario' (optional blocks: vapor, ring, mode, "
        "simulation, saturation, allan, output_directory)");
  }

  RunConfig cfg;
  cfg.scenario = doc.at("scenario").get<std::string>();
  if (doc.contains("vapor")) cfg.vapor = parse_vapor(doc.at("vapor"));
  if (doc.contains("ring")) cfg.ring = parse_ring(doc.at("ring"));
  if (doc.contains("mode")) cfg.mode = parse_mode(doc.at("mode"));
  if (doc.contains("simulation")) cfg.simulation = parse_simulation(doc.at("simulation"));
  if (doc.contains("saturation")) cfg.saturation = parse_saturation(doc.at("saturation"));
  if (doc.contains("allan")) cfg.allan = parse_allan(doc.at("allan"));
  read_into(doc, "output_directory", cfg.output_directory);
  return cfg;
}

RunConfig load_config(const std::string& name_or_path) {
  namespace fs = std::filesystem;
  std::vector<fs::path> candidates;
  candidates.emplace_back(name_or_path);
  if (const char* dir = std::getenv("ACMRR_CONFIG_DIR")) {
    candidates.emplace_back(fs::path(dir) / (name_or_path + ".json"));
    candidates.emplace_back(fs::path(dir) / name_or_path);
  }
  candidates.emplace_back(fs::path("presets") / (name_or_path + ".json"));
  for (const auto& candidate : candidates) {
    if (fs::exists(candidate) && fs::is_regular_file(candidate)) {
      return parse_config(io::read_text_file(candidate.string()));
    }
  }
  throw ValidationError("config: cannot find '" + name_or_path +
                        "' (searched the path, $ACMRR_CONFIG_DIR and ./presets)");
}

vapor::RbD2Line RunConfig::make_line() const {
  if (vapor.line_file) return vapor::RbD2Line::from_file(*vapor.line_file);
  return vapor::RbD2Line::rb87_d2();
}

vapor::VaporState RunConfig::make_vapor_state(const vapor::RbD2Line& line) const {
  vapor::VaporOptions options;
  options.transit_broadening_hz = vapor.transit_broadening_hz;
  options.pressure_model = vapor.pressure_model;
  if (vapor.density_override_m3) options.density_override_m3 = *vapor.density_override_m3;
  return vapor::VaporState::at_temperature(vapor.temperature_k, line, options);
}

cavity::RingParams RunConfig::make_ring() const {
  if (!ring) throw ValidationError("config: this command requires a 'ring' block");
  const RingBlock& block = *ring;
  if (block.coupling_r && block.round_trip_tau) {
    cavity::RingParams params;
    params.radius_m = block.radius_m;
    params.n_eff = block.n_eff;
    params.resonance_wavelength_m = block.resonance_wavelength_m;
    params.coupling_r = *block.coupling_r;
    params.round_trip_tau = *block.round_trip_tau;
    if (block.loaded_q) params.loaded_q = *block.loaded_q;
    if (block.kappa_hz) params.kappa_hz = *block.kappa_hz;
    params.validate();
    return params;
  }
  double loaded_q = 0.0;
  if (block.loaded_q) {
    loaded_q = *block.loaded_q;
  } else {
    const double nu0 = 299792458.0 / block.resonance_wavelength_m;
    loaded_q = nu0 / (2.0 * *block.kappa_hz);
  }
  cavity::RingParams params = cavity::ring_from_q_contrast(
      loaded_q, block.contrast, block.resonance_wavelength_m, block.radius_m, block.n_eff,
      block.coupling_regime);
  if (block.kappa_hz) params.kappa_hz = *block.kappa_hz;
  params.validate();
  return params;
}

cavity::ModeField RunConfig::make_mode() const {
  if (!mode) throw ValidationError("config: this command requires a 'mode' block");
  const RingBlock ring_block = ring ? *ring : RingBlock{};
  cavity::ModeField field;
  field.g0_hz = mode->g0_hz;
  field.interaction_volume_m3 = mode->interaction_volume_m3;
  field.decay_length_m =
      mode->decay_length_m
          ? *mode->decay_length_m
          : cavity::evanescent_decay_length(ring_block.resonance_wavelength_m, ring_block.n_eff);
  field.validate();
  return field;
}

std::vector<double> RunConfig::detuning_grid() const {
  return linspace(simulation.detuning_min_hz, simulation.detuning_max_hz,
                  simulation.detuning_points);
}

}  // namespace acmrr::config
