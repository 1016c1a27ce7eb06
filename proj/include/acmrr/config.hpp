#ifndef ACMRR_CONFIG_HPP
#define ACMRR_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "acmrr/cavity.hpp"
#include "acmrr/cqed.hpp"
#include "acmrr/vapor.hpp"

namespace acmrr::config {

// Run configuration, parsed from JSON with unit-suffixed keys. Unknown keys
// are rejected so that a typo cannot silently fall back to a default.

struct VaporBlock {
  double temperature_k = 373.15;
  double transit_broadening_hz = 200e6;
  std::optional<double> density_override_m3;
  vapor::VaporPressureModel pressure_model = vapor::VaporPressureModel::kNesmeyanov;
  std::optional<std::string> line_file;
};

struct RingBlock {
  double radius_m = 20e-6;
  double n_eff = 1.8;
  double resonance_wavelength_m = 780.241209686e-9;
  std::optional<double> coupling_r;
  std::optional<double> round_trip_tau;
  std::optional<double> loaded_q;
  std::optional<double> kappa_hz;
  double contrast = 0.8;
  cavity::CouplingRegime coupling_regime = cavity::CouplingRegime::kUndercoupled;
};

struct ModeBlock {
  double g0_hz = 330e6;
  std::optional<double> decay_length_m;  // default from n_eff
  double interaction_volume_m3 = 11.2e-18;
};

struct SimulationBlock {
  int n_configs = 100;
  std::uint64_t seed = 1;
  double detuning_min_hz = -3e9;
  double detuning_max_hz = 3e9;
  int detuning_points = 1201;
  std::string atom_count_mode = "from_density";  // from_density | fixed | poisson
  std::optional<std::uint64_t> atom_count;
  double shell_depth_factor = cqed::InteractionRegion::kDefaultDepthFactor;
  double gamma_hz = 200e6;
  double power_w = 1e-9;
  double cavity_detuning_hz = 0.0;
};

struct SaturationBlock {
  std::vector<double> powers_w;
  double true_alpha0 = 0.3;
  double true_p_sat_w = 10e-9;
  double noise_fraction = 0.01;
  std::vector<std::string> input_files;  // measured traces; empty = synthesize
};

struct AllanBlock {
  std::string noise_kind = "white_fm";  // white_fm | random_walk_fm
  double level_hz = 3e5;
  std::size_t n_samples = 16384;
  double sample_period_s = 1.0;
  std::optional<std::string> input_file;
  std::optional<double> input_sample_period_s;
};

struct RunConfig {
  std::string scenario;
  VaporBlock vapor;
  std::optional<RingBlock> ring;
  std::optional<ModeBlock> mode;
  SimulationBlock simulation;
  std::optional<SaturationBlock> saturation;
  std::optional<AllanBlock> allan;
  std::string output_directory = ".";

  // Materialized pieces, validated against module invariants.
  vapor::VaporState make_vapor_state(const vapor::RbD2Line& line) const;
  cavity::RingParams make_ring() const;       // requires the ring block
  cavity::ModeField make_mode() const;        // requires ring + mode blocks
  vapor::RbD2Line make_line() const;
  std::vector<double> detuning_grid() const;
};

RunConfig parse_config(const std::string& json_text);
// Resolves `name_or_path` against the filesystem, then against
// $ACMRR_CONFIG_DIR/<name>.json and ./presets/<name>.json.
RunConfig load_config(const std::string& name_or_path);

}  // namespace acmrr::config

#endif
