#include "acmrr/vapor.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "acmrr/constants.hpp"
#include "acmrr/errors.hpp"
#include "acmrr/faddeeva.hpp"

namespace acmrr::vapor {

namespace {
constexpr double kPi = constants::pi;
constexpr double kTemperatureMinK = 250.0;
constexpr double kTemperatureMaxK = 500.0;
constexpr double kSqrt8Ln2 = 2.3548200450309493;  // FWHM / sigma for a Gaussian
}  // namespace

double RbD2Line::wavelength_m() const {
  return constants::speed_of_light / center_frequency_hz;
}

RbD2Line RbD2Line::rb87_d2() {
  // 87Rb D2 hyperfine table; offsets from the center-of-gravity transition
  // frequency, built from the 5S1/2 (A = 3.417 GHz) and 5P3/2 hyperfine
  // constants tabulated in Steck, "Rubidium 87 D Line Data". Strengths are
  // (2F+1)/8 x S_FF' (thermal ground populations times the relative
  // transition strength factors) and sum to exactly 1.
  RbD2Line line;
  line.components = {
      {"F2->F1p", -2.7928578e9, 1.0 / 32.0},
      {"F2->F2p", -2.6359172e9, 5.0 / 32.0},
      {"F2->F3p", -2.3692651e9, 7.0 / 16.0},
      {"F1->F0p", +3.9696028e9, 1.0 / 16.0},
      {"F1->F1p", +4.0418248e9, 5.0 / 32.0},
      {"F1->F2p", +4.1987654e9, 5.0 / 32.0},
  };
  return line;
}

RbD2Line RbD2Line::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open line data file: " + path);
  RbD2Line line;
  line.components.clear();
  std::string row;
  while (std::getline(in, row)) {
    const auto first = row.find_first_not_of(" \t\r");
    if (first == std::string::npos || row[first] == '#') continue;
    std::istringstream fields(row);
    HyperfineComponent component;
    if (!(fields >> component.label >> component.offset_hz >> component.strength)) {
      throw DataError("malformed row in line data file " + path + ": '" + row + "'");
    }
    line.components.push_back(component);
  }
  line.validate();
  return line;
}

void RbD2Line::validate() const {
  if (center_frequency_hz <= 0 || natural_linewidth_hz <= 0 || atomic_mass_kg <= 0) {
    throw ValidationError("line data: frequencies and mass must be positive");
  }
  if (components.empty()) throw ValidationError("line data: no hyperfine components");
  double sum = 0.0;
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (components[i].strength <= 0) {
      throw ValidationError("line data: non-positive strength for " + components[i].label);
    }
    if (i > 0 && components[i].offset_hz <= components[i - 1].offset_hz) {
      throw ValidationError("line data: offsets must be strictly increasing");
    }
    sum += components[i].strength;
  }
  if (std::fabs(sum - 1.0) > 1e-9) {
    throw ValidationError("line data: strengths must sum to 1, got " + std::to_string(sum));
  }
}

double vapor_pressure_pa(double temperature_k, VaporPressureModel model) {
  switch (model) {
    case VaporPressureModel::kNesmeyanov: {
      // Nesmeyanov, "Vapor Pressure of the Chemical Elements", liquid Rb.
      const double log10_torr = 15.88253 - 4529.635 / temperature_k +
                                0.00058663 * temperature_k -
                                2.99138 * std::log10(temperature_k);
      return std::pow(10.0, log10_torr) * constants::torr_to_pascal;
    }
    case VaporPressureModel::kAlcock: {
      // Alcock, Itkin & Horrigan, Can. Metall. Q. 23, 309 (1984), liquid Rb.
      const double log10_atm = 4.312 - 4040.0 / temperature_k;
      return std::pow(10.0, log10_atm) * constants::atm_to_pascal;
    }
  }
  throw ValidationError("unknown vapor pressure model");
}

double density_from_temperature(double temperature_k, VaporPressureModel model) {
  if (!(temperature_k >= kTemperatureMinK && temperature_k <= kTemperatureMaxK)) {
    throw ValidationError("temperature " + std::to_string(temperature_k) +
                          " K outside the vapor-pressure model validity window [250 K, 500 K]");
  }
  return vapor_pressure_pa(temperature_k, model) /
         (constants::k_boltzmann * temperature_k);
}

double doppler_fwhm(double temperature_k, const RbD2Line& line) {
  if (!(temperature_k > 0)) {
    throw ValidationError("doppler_fwhm requires a positive temperature");
  }
  const double mc2 = line.atomic_mass_kg * constants::speed_of_light * constants::speed_of_light;
  return line.center_frequency_hz *
         std::sqrt(8.0 * constants::k_boltzmann * temperature_k * std::log(2.0) / mc2);
}

double doppler_sigma(double temperature_k, const RbD2Line& line) {
  return doppler_fwhm(temperature_k, line) / kSqrt8Ln2;
}

double sample_doppler_detuning(double temperature_k, const RbD2Line& line, Rng& rng) {
  return rng.normal(0.0, doppler_sigma(temperature_k, line));
}

VaporState VaporState::at_temperature(double temperature_k, const RbD2Line& line,
                                      const VaporOptions& options) {
  VaporState state;
  state.temperature_k = temperature_k;
  state.density_m3 = options.density_override_m3 >= 0
                         ? options.density_override_m3
                         : density_from_temperature(temperature_k, options.pressure_model);
  state.doppler_fwhm_hz = doppler_fwhm(temperature_k, line);
  state.transit_broadening_hz = options.transit_broadening_hz;
  state.validate();
  return state;
}

void VaporState::validate() const {
  if (!(temperature_k > 0)) throw ValidationError("vapor: temperature must be positive");
  if (density_m3 < 0) throw ValidationError("vapor: density must be non-negative");
  if (doppler_fwhm_hz < 0) throw ValidationError("vapor: Doppler width must be non-negative");
  if (transit_broadening_hz < 0) {
    throw ValidationError("vapor: transit broadening must be non-negative");
  }
}

std::complex<double> susceptibility(double detuning_hz, const VaporState& vapor,
                                    const RbD2Line& line) {
  if (!std::isfinite(detuning_hz)) throw ValidationError("susceptibility: detuning not finite");
  if (vapor.density_m3 == 0.0) return {0.0, 0.0};

  // Normalization: integral over frequency of k0 Im(chi) equals
  // density * lambda0^2 * Gamma_nat / 2 (the D2 manifold's integrated
  // absorption for an unpolarized thermal ensemble).
  const double lambda0 = line.wavelength_m();
  const double prefactor = vapor.density_m3 * lambda0 * lambda0 * lambda0 *
                           line.natural_linewidth_hz / (4.0 * kPi * kPi);
  const double gamma_lorentz_hz =
      0.5 * (line.natural_linewidth_hz + vapor.transit_broadening_hz);  // HWHM
  const double sigma_hz = vapor.doppler_fwhm_hz / kSqrt8Ln2;

  std::complex<double> chi{0.0, 0.0};
  if (sigma_hz == 0.0) {
    // homogeneous limit
    for (const auto& component : line.components) {
      const double delta = detuning_hz - component.offset_hz;
      chi += component.strength * (-prefactor) /
             std::complex<double>(delta, gamma_lorentz_hz);
    }
    return chi;
  }

  const double inv_sqrt2_sigma = 1.0 / (std::sqrt(2.0) * sigma_hz);
  const std::complex<double> voigt_scale =
      std::complex<double>(0.0, std::sqrt(kPi) * inv_sqrt2_sigma);
  for (const auto& component : line.components) {
    const double delta = detuning_hz - component.offset_hz;
    const std::complex<double> z(delta * inv_sqrt2_sigma, gamma_lorentz_hz * inv_sqrt2_sigma);
    chi += component.strength * prefactor * voigt_scale * faddeeva_w(z);
  }
  return chi;
}

std::complex<double> refractive_index(double detuning_hz, const VaporState& vapor,
                                      const RbD2Line& line) {
  return std::sqrt(1.0 + susceptibility(detuning_hz, vapor, line));
}

std::vector<double> free_space_transmission(double path_length_m, const VaporState& vapor,
                                            const RbD2Line& line,
                                            std::span<const double> detunings_hz) {
  if (!(path_length_m > 0)) {
    throw ValidationError("free_space_transmission: path length must be positive");
  }
  const double k0 = 2.0 * kPi / line.wavelength_m();
  std::vector<double> transmission(detunings_hz.size());
  for (std::size_t i = 0; i < detunings_hz.size(); ++i) {
    const double absorption = k0 * susceptibility(detunings_hz[i], vapor, line).imag();
    transmission[i] = std::exp(-absorption * path_length_m);
  }
  return transmission;
}

}  // namespace acmrr::vapor
