#include "acmrr/pipelines.hpp"

#include <cmath>
#include <filesystem>
#include <iomanip>
#include <sstream>

#include "acmrr/constants.hpp"
#include "acmrr/cqed.hpp"
#include "acmrr/errors.hpp"
#include "acmrr/fitting.hpp"
#include "acmrr/io.hpp"
#include "acmrr/rng.hpp"
#include "acmrr/saturation.hpp"
#include "acmrr/stability.hpp"

namespace acmrr::pipelines {

namespace fs = std::filesystem;

namespace {

cqed::CountSpec count_spec_from_config(const config::RunConfig& cfg) {
  const auto& sim = cfg.simulation;
  if (sim.atom_count_mode == "fixed") return cqed::CountSpec::fixed(*sim.atom_count);
  if (sim.atom_count_mode == "poisson") return cqed::CountSpec::poisson();
  return cqed::CountSpec::from_density();
}

std::string joined(const std::string& directory, const std::string& name) {
  return (fs::path(directory) / name).string();
}

}  // namespace

SpectrumTrace simulate_spectrum(const config::RunConfig& cfg) {
  const vapor::RbD2Line line = cfg.make_line();
  const vapor::VaporState vapor_state = cfg.make_vapor_state(line);
  const cavity::RingParams ring = cfg.make_ring();
  const cavity::ModeField mode = cfg.make_mode();
  const auto region =
      cqed::InteractionRegion::around_ring(ring, mode, cfg.simulation.shell_depth_factor);
  const cqed::CountSpec count = count_spec_from_config(cfg);
  const std::vector<double> grid = cfg.detuning_grid();

  const double kappa =
      ring.kappa_hz > 0 ? ring.kappa_hz
                        : cavity::kappa_from_q(ring.loaded_q, ring.center_frequency_hz());
  cqed::WeakDriveOptions options;
  options.cavity_detuning_hz = cfg.simulation.cavity_detuning_hz;

  const std::uint64_t master_seed = cfg.simulation.seed;
  const auto make_ensemble = [&](int index) {
    return cqed::place_atoms(count, region, vapor_state, mode, ring,
                             derive_seed(master_seed, static_cast<std::uint64_t>(index)));
  };
  SpectrumTrace trace = cqed::average_spectra(make_ensemble, cfg.simulation.n_configs, kappa,
                                              cfg.simulation.gamma_hz, grid, options);
  trace.scenario = cfg.scenario;
  trace.kind = "simulated";
  trace.seed = master_seed;
  trace.power_w = cfg.simulation.power_w;
  trace.temperature_k = vapor_state.temperature_k;
  trace.reference_frequency_hz = line.center_frequency_hz;
  return trace;
}

std::string run_simulate_spectrum(const config::RunConfig& cfg, const std::string& output_path,
                                  std::ostream& log) {
  const SpectrumTrace trace = simulate_spectrum(cfg);
  const std::string path =
      output_path.empty() ? joined(cfg.output_directory, cfg.scenario + "_spectrum.csv")
                          : output_path;
  io::write_spectrum_csv(trace, path);
  const auto splitting = cqed::extract_splitting(trace);
  log << "wrote " << path << " (" << trace.detuning_hz.size() << " points, "
      << cfg.simulation.n_configs << " configurations)\n";
  if (splitting) {
    log << "splitting: " << *splitting / 1e9 << " GHz\n";
  } else {
    log << "splitting: none detected\n";
  }
  return path;
}

std::string run_fit_spectrum(const config::RunConfig& cfg, const std::string& input_path,
                             const std::string& model, const std::string& output_path,
                             std::ostream& log) {
  const SpectrumTrace trace = io::read_spectrum_csv(input_path);
  fitting::FitResult result;
  if (model == "lorentzian") {
    result = fitting::fit_lorentzian(trace);
  } else if (model == "interaction-factor") {
    const vapor::RbD2Line line = cfg.make_line();
    const vapor::VaporState vapor_state = cfg.make_vapor_state(line);
    result = fitting::fit_interaction_factor(trace, cfg.make_ring(), vapor_state, line);
  } else {
    throw UsageError("fit-spectrum: model must be 'lorentzian' or 'interaction-factor'");
  }
  const std::string path =
      output_path.empty() ? joined(cfg.output_directory, cfg.scenario + "_fit.json")
                          : output_path;
  io::write_fit_result_json(result, model, path);
  log << "wrote " << path << " (residual norm " << result.residual_norm << ", "
      << result.iterations << " iterations)\n";
  for (const auto& parameter : result.parameters) {
    log << "  " << parameter.name << " = " << parameter.value << " +/- " << parameter.ci95
        << (parameter.at_lower_bound ? " (at lower bound)" : "") << "\n";
  }
  return path;
}

std::string run_saturation_scan(const config::RunConfig& cfg, const std::string& output_dir,
                                std::ostream& log) {
  if (!cfg.saturation) {
    throw ValidationError("config: saturation-scan requires a 'saturation' block");
  }
  const auto& sat = *cfg.saturation;
  const std::string directory = output_dir.empty() ? cfg.output_directory : output_dir;
  fs::create_directories(directory);

  const vapor::RbD2Line line = cfg.make_line();
  const vapor::VaporState vapor_state = cfg.make_vapor_state(line);
  const cavity::RingParams ring = cfg.make_ring();

  std::vector<saturation::SaturationPoint> points;
  if (!sat.input_files.empty()) {
    // measured traces, one per power (power taken from the trace header)
    for (const auto& file : sat.input_files) {
      const SpectrumTrace trace = io::read_spectrum_csv(file);
      const auto fit = fitting::fit_interaction_factor(trace, ring, vapor_state, line);
      points.push_back({trace.power_w, fit.value("interaction_factor"),
                        std::max(fit.ci95("interaction_factor") / 2.0, 1e-12)});
      log << "  " << file << ": IF = " << fit.value("interaction_factor") << "\n";
    }
  } else {
    if (sat.powers_w.size() < 4) {
      throw ValidationError("config: saturation.powers_W needs at least 4 powers");
    }
    Rng rng(derive_seed(cfg.simulation.seed, 0xa17u));
    const std::vector<double> grid = cfg.detuning_grid();
    for (double power : sat.powers_w) {
      const double alpha_true =
          saturation::interaction_factor_law(power, sat.true_alpha0, sat.true_p_sat_w);
      SpectrumTrace trace;
      trace.detuning_hz = grid;
      trace.transmission.resize(grid.size());
      trace.scenario = cfg.scenario;
      trace.power_w = power;
      trace.temperature_k = vapor_state.temperature_k;
      trace.reference_frequency_hz = line.center_frequency_hz;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto n_rb = vapor::refractive_index(grid[i], vapor_state, line);
        double value = std::norm(cavity::transfer_function(grid[i], ring, n_rb, alpha_true));
        value += sat.noise_fraction * rng.normal();
        trace.transmission[i] = std::min(std::max(value, 0.0), 1.0);
      }
      const auto fit = fitting::fit_interaction_factor(trace, ring, vapor_state, line);
      points.push_back({power, fit.value("interaction_factor"),
                        std::max(fit.ci95("interaction_factor") / 2.0, 1e-12)});
      log << "  P = " << power * 1e9 << " nW: IF = " << fit.value("interaction_factor")
          << "\n";
    }
  }

  const auto fit = fitting::fit_saturation(points);
  saturation::SaturationCurve curve;
  curve.points = points;
  curve.alpha0 = fit.value("alpha0");
  curve.p_sat_w = fit.value("p_sat_w");

  const std::string curve_path = joined(directory, cfg.scenario + "_saturation.csv");
  io::write_text_file(curve_path, io::saturation_curve_to_csv(curve));
  const std::string fit_path = joined(directory, cfg.scenario + "_saturation_fit.json");
  io::write_fit_result_json(fit, "saturation", fit_path);
  log << "wrote " << curve_path << " and " << fit_path << "\n";
  log << "P_sat = " << fit.value("p_sat_w") * 1e9 << " +/- " << fit.ci95("p_sat_w") * 1e9
      << " nW" << (fit.ill_conditioned ? " (ill-conditioned design)" : "") << "\n";
  return fit_path;
}

std::string run_allan(const config::RunConfig& cfg, const std::string& output_path,
                      std::ostream& log) {
  if (!cfg.allan) throw ValidationError("config: allan requires an 'allan' block");
  const auto& allan_cfg = *cfg.allan;

  stability::FrequencySeries series;
  if (allan_cfg.input_file) {
    series = io::read_frequency_series(*allan_cfg.input_file,
                                       allan_cfg.input_sample_period_s.value_or(0.0));
  } else {
    const auto kind = allan_cfg.noise_kind == "white_fm"
                          ? stability::NoiseKind::kWhiteFm
                          : stability::NoiseKind::kRandomWalkFm;
    series = stability::synthesize_noise(kind, allan_cfg.level_hz, allan_cfg.n_samples,
                                         allan_cfg.sample_period_s, cfg.simulation.seed);
  }

  const auto taus = stability::default_tau_grid(series);
  std::vector<std::string> warnings;
  const auto curve = stability::allan_deviation(series, taus, &warnings);
  for (const auto& warning : warnings) log << "warning: " << warning << "\n";

  const std::string path =
      output_path.empty() ? joined(cfg.output_directory, cfg.scenario + "_allan.csv")
                          : output_path;
  io::write_allan_csv(curve, series.label, path);
  log << "wrote " << path << " (" << curve.tau_s.size() << " taus)\n";
  return path;
}

void run_vapor_info(const config::RunConfig& cfg, std::ostream& out) {
  const vapor::RbD2Line line = cfg.make_line();
  const vapor::VaporState state = cfg.make_vapor_state(line);
  double n_atoms = 0.0;
  if (cfg.mode) {
    n_atoms = cavity::atoms_in_mode(state.density_m3, cfg.make_mode());
  } else {
    cavity::ModeField default_mode;
    default_mode.decay_length_m = 1.0;  // only the volume matters here
    n_atoms = cavity::atoms_in_mode(state.density_m3, default_mode);
  }
  out << "temperature_K:        " << state.temperature_k << "\n";
  out << "temperature_C:        " << state.temperature_k - 273.15 << "\n";
  out << "density_m3:           " << state.density_m3 << "\n";
  out << "doppler_fwhm_Hz:      " << state.doppler_fwhm_hz << "\n";
  out << "transit_broadening_Hz:" << " " << state.transit_broadening_hz << "\n";
  out << "atoms_in_mode:        " << n_atoms << "\n";
}

std::string run_report(const config::RunConfig& cfg, const std::string& output_path,
                       std::ostream& log) {
  const vapor::RbD2Line line = cfg.make_line();
  const vapor::VaporState state = cfg.make_vapor_state(line);
  const cavity::ModeField mode = cfg.make_mode();
  const double nu0 = line.center_frequency_hz;

  std::ostringstream report;
  report << "# " << cfg.scenario << " device report\n\n";
  report << std::setprecision(4);

  const double n_atoms = cavity::atoms_in_mode(state.density_m3, mode);
  report << "## Vapor\n\n";
  report << "| quantity | value |\n|---|---|\n";
  report << "| temperature | " << state.temperature_k << " K |\n";
  report << "| density | " << state.density_m3 << " m^-3 |\n";
  report << "| Doppler FWHM | " << state.doppler_fwhm_hz / 1e6 << " MHz |\n";
  report << "| atoms in mode volume | " << n_atoms << " |\n\n";

  const cavity::RingParams ring = cfg.make_ring();
  const double kappa =
      ring.kappa_hz > 0 ? ring.kappa_hz : cavity::kappa_from_q(ring.loaded_q, nu0);
  const double gamma = cfg.simulation.gamma_hz;

  report << "## Cavity QED\n\n";
  report << "| quantity | value |\n|---|---|\n";
  report << "| kappa/2pi | " << kappa / 1e6 << " MHz |\n";
  report << "| loaded Q | " << cavity::q_from_kappa(kappa, nu0) << " |\n";

  // splitting from the ensemble simulation
  config::RunConfig sim_cfg = cfg;
  const SpectrumTrace trace = simulate_spectrum(sim_cfg);
  const auto splitting = cqed::extract_splitting(trace);
  if (splitting) {
    report << "| simulated splitting | " << *splitting / 1e9 << " GHz |\n";
    const auto coop = cqed::cooperativity_report(0.5 * *splitting, n_atoms, kappa, gamma);
    report << "| collective g/2pi | " << coop.g_collective_hz / 1e9 << " GHz |\n";
    report << "| cooperativity C | " << coop.cooperativity << " |\n";
    report << "| single-atom C0 | " << coop.single_atom_cooperativity << " |\n";
    report << "| g0_bar/2pi | " << coop.g0_bar_hz / 1e6 << " MHz |\n";
  } else {
    report << "| simulated splitting | not resolved |\n";
  }

  const double n_cav =
      cavity::intracavity_photons(cfg.ring ? cfg.ring->contrast : 0.8,
                                  cfg.simulation.power_w, cavity::q_from_kappa(kappa, nu0), nu0);
  report << "| intracavity photons at " << cfg.simulation.power_w * 1e9 << " nW | " << n_cav
         << " |\n";
  const double n_sat = saturation::saturation_photon_number(gamma, mode.g0_hz);
  report << "| n_sat (at g0) | " << n_sat << " |\n\n";

  report << "## Saturation model\n\n";
  const double c1 = 0.033;  // heater-device preset value
  const double ratio = saturation::saturation_input(51.2, c1, gamma) /
                       saturation::saturation_input(1.0, c1, gamma);
  report << "| quantity | value |\n|---|---|\n";
  report << "| P_sat ratio, N = 51.2 vs 1 (C1 = 0.033) | " << ratio << " |\n";

  const std::string path =
      output_path.empty() ? joined(cfg.output_directory, cfg.scenario + "_report.md")
                          : output_path;
  io::write_text_file(path, report.str());
  log << "wrote " << path << "\n";
  return path;
}

}  // namespace acmrr::pipelines
