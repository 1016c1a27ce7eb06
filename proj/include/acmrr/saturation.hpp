#ifndef ACMRR_SATURATION_HPP
#define ACMRR_SATURATION_HPP

#include <complex>
#include <optional>
#include <vector>

namespace acmrr::saturation {

// N identical oscillators (atoms) coupled at rate g to a damped cavity
// oscillator driven on resonance. Rates in Hz; the drive amplitude a_in is
// in sqrt(photon flux) with the flux in the same frequency units, so that
// input power = |a_in|^2 * (photon energy).
struct OscillatorSystem {
  double n_atoms = 0.0;  // effective count; real-valued on purpose
  double coupling_hz = 0.0;
  double kappa_hz = 0.0;
  double gamma_hz = 0.0;
  double drive_amplitude = 1.0;
  void validate() const;
};

struct SteadyStateAmplitudes {
  std::complex<double> cavity;               // a
  std::optional<std::complex<double>> atom;  // b_j, identical for all j
};

// Steady state of the coupled equations:
//   a = sqrt(2 kappa) a_in / (kappa (1 + C_N)),   C_N = g^2 N / (kappa gamma)
//   b_j = i sqrt(2 C_1) a_in / (sqrt(gamma) (1 + C_N)),  C_1 = g^2 / (kappa gamma)
SteadyStateAmplitudes steady_state_amplitudes(const OscillatorSystem& system);

// C_1 = g^2 / (kappa gamma), the single-oscillator cooperativity of this
// model (no factor 2; it is defined by the steady-state equations above).
double oscillator_cooperativity(double coupling_hz, double kappa_hz, double gamma_hz);

// Input photon flux at which |b_j| reaches 1:
//   |a_inSat|^2 = (gamma / 2) (1 + N C_1)^2 / C_1.
// Multiplying by the photon energy turns this into the saturation power,
// hence P_sat ~ (1 + N C_1)^2 / C_1.
double saturation_input(double n_atoms, double c1, double gamma_hz);

// n_sat = gamma^2 / (2 g0^2).
double saturation_photon_number(double gamma_hz, double g0_hz);

// alpha(P) = alpha0 / (1 + P / P_sat).
double interaction_factor_law(double power_w, double alpha0, double p_sat_w);

struct SaturationPoint {
  double power_w = 0.0;
  double alpha = 0.0;
  double sigma = 0.0;  // 1-sigma uncertainty on alpha
};

struct SaturationCurve {
  std::vector<SaturationPoint> points;  // strictly increasing powers
  double alpha0 = 0.0;
  double p_sat_w = 0.0;
  void validate() const;
};

}  // namespace acmrr::saturation

#endif
