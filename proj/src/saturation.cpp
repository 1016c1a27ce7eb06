#include "acmrr/saturation.hpp"

#include <cmath>

#include "acmrr/errors.hpp"

namespace acmrr::saturation {

void OscillatorSystem::validate() const {
  if (n_atoms < 0) throw ValidationError("oscillator system: N must be >= 0");
  if (!(coupling_hz > 0 && kappa_hz > 0 && gamma_hz > 0)) {
    throw ValidationError("oscillator system: rates must be positive");
  }
}

SteadyStateAmplitudes steady_state_amplitudes(const OscillatorSystem& system) {
  system.validate();
  const double c1 = oscillator_cooperativity(system.coupling_hz, system.kappa_hz,
                                             system.gamma_hz);
  const double c_n = system.n_atoms * c1;
  SteadyStateAmplitudes out;
  out.cavity = std::sqrt(2.0 / system.kappa_hz) * system.drive_amplitude / (1.0 + c_n);
  if (system.n_atoms > 0) {
    out.atom = std::complex<double>(0.0, 1.0) * std::sqrt(2.0 * c1) *
               system.drive_amplitude / (std::sqrt(system.gamma_hz) * (1.0 + c_n));
  }
  return out;
}

double oscillator_cooperativity(double coupling_hz, double kappa_hz, double gamma_hz) {
  if (!(coupling_hz > 0 && kappa_hz > 0 && gamma_hz > 0)) {
    throw ValidationError("oscillator cooperativity: rates must be positive");
  }
  return coupling_hz * coupling_hz / (kappa_hz * gamma_hz);
}

double saturation_input(double n_atoms, double c1, double gamma_hz) {
  if (!(c1 > 0)) throw ValidationError("saturation_input: C1 must be positive");
  if (n_atoms < 0) throw ValidationError("saturation_input: N must be >= 0");
  if (!(gamma_hz > 0)) throw ValidationError("saturation_input: gamma must be positive");
  const double loading = 1.0 + n_atoms * c1;
  return 0.5 * gamma_hz * loading * loading / c1;
}

double saturation_photon_number(double gamma_hz, double g0_hz) {
  if (!(g0_hz > 0)) throw ValidationError("saturation_photon_number: g0 must be positive");
  return gamma_hz * gamma_hz / (2.0 * g0_hz * g0_hz);
}

double interaction_factor_law(double power_w, double alpha0, double p_sat_w) {
  if (power_w < 0) throw ValidationError("interaction_factor_law: power must be >= 0");
  if (!(p_sat_w > 0)) throw ValidationError("interaction_factor_law: P_sat must be positive");
  return alpha0 / (1.0 + power_w / p_sat_w);
}

void SaturationCurve::validate() const {
  if (points.empty()) throw ValidationError("saturation curve: no points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i].power_w > 0)) {
      throw ValidationError("saturation curve: powers must be positive");
    }
    if (points[i].alpha < 0) {
      throw ValidationError("saturation curve: interaction factors must be >= 0");
    }
    if (i > 0 && !(points[i].power_w > points[i - 1].power_w)) {
      throw ValidationError("saturation curve: powers must be strictly increasing");
    }
  }
}

}  // namespace acmrr::saturation
