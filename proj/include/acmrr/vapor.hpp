#ifndef ACMRR_VAPOR_HPP
#define ACMRR_VAPOR_HPP

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "acmrr/rng.hpp"

namespace acmrr::vapor {

// One hyperfine component of the D2 manifold. Offsets are relative to the
// center-of-gravity transition frequency; strengths fold in the thermal
// ground-state populations and sum to 1 over the manifold.
struct HyperfineComponent {
  std::string label;
  double offset_hz = 0.0;
  double strength = 0.0;
};

struct RbD2Line {
  double center_frequency_hz = 384.2304844685e12;  // 780.241 nm
  double natural_linewidth_hz = 6.0e6;             // FWHM
  double atomic_mass_kg = 1.44316060e-25;          // 87Rb
  std::vector<HyperfineComponent> components;

  // Compiled-in copy of data/rb87_d2_lines.dat.
  static RbD2Line rb87_d2();
  // Loads a line table (text, columns: label offset_Hz strength).
  static RbD2Line from_file(const std::string& path);

  double wavelength_m() const;
  // Checks positivity, strictly increasing offsets, strengths summing to 1.
  void validate() const;
};

enum class VaporPressureModel {
  kNesmeyanov,  // log10 P(Torr) = A - B/T + C*T + D*log10 T (liquid branch)
  kAlcock,      // log10 P(atm)  = A - B/T                   (liquid branch)
};

struct VaporOptions {
  double transit_broadening_hz = 200e6;
  VaporPressureModel pressure_model = VaporPressureModel::kNesmeyanov;
  double density_override_m3 = -1.0;  // <0: use the vapor-pressure model
};

struct VaporState {
  double temperature_k = 0.0;
  double density_m3 = 0.0;
  double doppler_fwhm_hz = 0.0;
  double transit_broadening_hz = 200e6;

  static VaporState at_temperature(double temperature_k, const RbD2Line& line,
                                   const VaporOptions& options = {});
  void validate() const;
};

// Saturated-vapor pressure of Rb in Pa. The liquid-branch correlation is used
// over the whole validity window; the model is not meant for frozen cells.
double vapor_pressure_pa(double temperature_k,
                         VaporPressureModel model = VaporPressureModel::kNesmeyanov);

// Saturated-vapor number density, valid for temperatures in [250 K, 500 K].
double density_from_temperature(double temperature_k,
                                VaporPressureModel model = VaporPressureModel::kNesmeyanov);

// Doppler FWHM nu0 * sqrt(8 kB T ln2 / (m c^2)).
double doppler_fwhm(double temperature_k, const RbD2Line& line);
// Standard deviation of the Doppler detuning distribution.
double doppler_sigma(double temperature_k, const RbD2Line& line);
double sample_doppler_detuning(double temperature_k, const RbD2Line& line, Rng& rng);

// Complex electric susceptibility of the vapor at a probe detuning from the
// line center-of-gravity. Strength-weighted sum of Voigt profiles; Lorentzian
// FWHM = natural linewidth + transit broadening, Gaussian width from the
// Doppler FWHM stored in the state. Normalized so that the frequency
// integral of k0*Im(chi) equals density * lambda0^2 * Gamma_nat / 2.
std::complex<double> susceptibility(double detuning_hz, const VaporState& vapor,
                                    const RbD2Line& line);

// n = sqrt(1 + chi); chi is ~1e-3 at most here, so the small-chi form
// 1 + chi/2 agrees to ~1e-7, but the exact square root costs nothing.
std::complex<double> refractive_index(double detuning_hz, const VaporState& vapor,
                                      const RbD2Line& line);

// Beer-Lambert transmission exp(-k0 Im(chi) L) on a detuning grid. Double-pass
// geometries are expressed by passing the total path length.
std::vector<double> free_space_transmission(double path_length_m,
                                            const VaporState& vapor,
                                            const RbD2Line& line,
                                            std::span<const double> detunings_hz);

}  // namespace acmrr::vapor

#endif
