#ifndef ACMRR_CAVITY_HPP
#define ACMRR_CAVITY_HPP

#include <complex>

namespace acmrr::cavity {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

enum class CouplingRegime { kUndercoupled, kOvercoupled };

// All-pass microring parameters. kappa is the field decay rate stored as the
// off-resonance half linewidth in ordinary frequency (Hz); loaded_q and kappa
// must satisfy kappa = nu0 / (2 Q) within 1% when both are set.
struct RingParams {
  double radius_m = 20e-6;
  double n_eff = 1.8;
  double coupling_r = 0.0;       // waveguide-ring field coupling coefficient
  double round_trip_tau = 0.0;   // round-trip amplitude (1 - loss)
  double resonance_wavelength_m = 780.241209686e-9;
  double loaded_q = 0.0;         // 0 means unset
  double kappa_hz = 0.0;         // 0 means unset

  double ring_length_m() const;        // 2 pi R
  double center_frequency_hz() const;  // c / resonance_wavelength
  // FSR with the group index approximated by n_eff (documented approximation;
  // the scan windows here are ~1e-5 of the optical frequency).
  double fsr_hz() const;
  void validate() const;
};

// Evanescent field model: field amplitude g0 at the waveguide top surface,
// exponential decay with height. The interaction volume is the effective
// volume used to convert densities to atom numbers.
struct ModeField {
  double g0_hz = 330e6;
  double decay_length_m = 0.0;
  double interaction_volume_m3 = 11.2e-18;
  void validate() const;
};

// Default evanescent decay length lambda / (4 pi sqrt(n_eff^2 - 1)).
double evanescent_decay_length(double wavelength_m, double n_eff);

// All-pass ring output field (r - tau e^{ikL}) / (1 - r tau e^{ikL}) with
// k = 2 pi ((n_rb - 1) IF + n_eff) / lambda(detuning),
// lambda(detuning) = c / (nu0 + detuning). The caller evaluates n_rb at the
// same detuning. Throws if the denominator is singular (|.| < 1e-12).
std::complex<double> transfer_function(double detuning_hz, const RingParams& ring,
                                       std::complex<double> n_rb,
                                       double interaction_factor);

// kappa = nu0 / (2 Q): field decay half linewidth in Hz.
double kappa_from_q(double loaded_q, double center_frequency_hz);
double q_from_kappa(double kappa_hz, double center_frequency_hz);

// Average intracavity photon number for an undercoupled cavity:
// n_cav = dT P_in Q / ((1 + sqrt(1 - dT)) hbar omega0^2), omega0 = 2 pi nu0.
double intracavity_photons(double contrast, double input_power_w, double loaded_q,
                           double center_frequency_hz);

// Evanescent coupling at a position in the vapor region: g0 exp(-z / L_d)
// where z is the height above the waveguide top surface (the transverse decay
// dominates for a thin ring; azimuthal dependence is ignored for a
// traveling-wave mode). z < 0 is inside the dielectric and rejected.
double coupling_at_position(const Vec3& position, const ModeField& mode,
                            const RingParams& ring);

// N = density * interaction volume (real-valued; callers round for display).
double atoms_in_mode(double density_m3, const ModeField& mode);

// Recovers (r, tau) from a measured loaded Q and on-resonance contrast
// dT = 1 - T_min / T_baseline. Transmission alone cannot distinguish the
// under- from the over-coupled branch, so the caller picks one. n_eff is
// snapped to put a longitudinal mode exactly at the resonance wavelength.
RingParams ring_from_q_contrast(double loaded_q, double contrast,
                                double resonance_wavelength_m, double radius_m,
                                double n_eff,
                                CouplingRegime regime = CouplingRegime::kUndercoupled);

// Exact bare-ring dip metrics (used by the calibration solve and tests).
double ring_min_transmission(const RingParams& ring);
double ring_fwhm_hz(const RingParams& ring);

}  // namespace acmrr::cavity

#endif
