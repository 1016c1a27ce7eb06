#include "acmrr/cavity.hpp"

#include <cmath>
#include <string>

#include "acmrr/constants.hpp"
#include "acmrr/errors.hpp"

namespace acmrr::cavity {

namespace {
constexpr double kPi = constants::pi;
constexpr double kC = constants::speed_of_light;
}  // namespace

double RingParams::ring_length_m() const { return 2.0 * kPi * radius_m; }

double RingParams::center_frequency_hz() const { return kC / resonance_wavelength_m; }

double RingParams::fsr_hz() const { return kC / (n_eff * ring_length_m()); }

void RingParams::validate() const {
  if (!(radius_m > 0)) throw ValidationError("ring: radius must be positive");
  if (!(n_eff > 1.0)) throw ValidationError("ring: n_eff must exceed 1");
  if (!(coupling_r > 0 && coupling_r < 1)) {
    throw ValidationError("ring: coupling coefficient r must lie in (0, 1)");
  }
  if (!(round_trip_tau > 0 && round_trip_tau <= 1)) {
    throw ValidationError("ring: round-trip amplitude tau must lie in (0, 1]");
  }
  if (!(resonance_wavelength_m > 0)) {
    throw ValidationError("ring: resonance wavelength must be positive");
  }
  if (loaded_q > 0 && kappa_hz > 0) {
    const double expected = kappa_from_q(loaded_q, center_frequency_hz());
    if (std::fabs(kappa_hz - expected) > 0.01 * expected) {
      throw ValidationError("ring: kappa_Hz and loaded_Q disagree by more than 1% "
                            "(kappa = nu0 / (2 Q))");
    }
  }
}

void ModeField::validate() const {
  if (!(g0_hz > 0)) throw ValidationError("mode: g0 must be positive");
  if (!(decay_length_m > 0)) throw ValidationError("mode: decay length must be positive");
  if (!(interaction_volume_m3 > 0)) {
    throw ValidationError("mode: interaction volume must be positive");
  }
}

double evanescent_decay_length(double wavelength_m, double n_eff) {
  if (!(n_eff > 1.0)) throw ValidationError("evanescent decay length requires n_eff > 1");
  return wavelength_m / (4.0 * kPi * std::sqrt(n_eff * n_eff - 1.0));
}

std::complex<double> transfer_function(double detuning_hz, const RingParams& ring,
                                       std::complex<double> n_rb,
                                       double interaction_factor) {
  if (interaction_factor < 0) {
    throw ValidationError("transfer_function: interaction factor must be >= 0");
  }
  const double nu = ring.center_frequency_hz() + detuning_hz;
  const double wavelength = kC / nu;
  const std::complex<double> k =
      2.0 * kPi * ((n_rb - 1.0) * interaction_factor + ring.n_eff) / wavelength;
  const std::complex<double> round_trip =
      std::exp(std::complex<double>(0.0, 1.0) * k * ring.ring_length_m());
  const std::complex<double> denominator =
      1.0 - ring.coupling_r * ring.round_trip_tau * round_trip;
  if (std::abs(denominator) < 1e-12) {
    throw ValidationError("transfer_function: singular denominator (r tau e^{ikL} ~ 1)");
  }
  return (ring.coupling_r - ring.round_trip_tau * round_trip) / denominator;
}

double kappa_from_q(double loaded_q, double center_frequency_hz) {
  if (!(loaded_q > 0)) throw ValidationError("kappa_from_q: Q must be positive");
  return center_frequency_hz / (2.0 * loaded_q);
}

double q_from_kappa(double kappa_hz, double center_frequency_hz) {
  if (!(kappa_hz > 0)) throw ValidationError("q_from_kappa: kappa must be positive");
  return center_frequency_hz / (2.0 * kappa_hz);
}

double intracavity_photons(double contrast, double input_power_w, double loaded_q,
                           double center_frequency_hz) {
  if (!(contrast >= 0.0 && contrast <= 1.0)) {
    throw ValidationError("intracavity_photons: contrast must lie in [0, 1]");
  }
  if (input_power_w < 0) {
    throw ValidationError("intracavity_photons: input power must be >= 0");
  }
  const double omega0 = 2.0 * kPi * center_frequency_hz;
  return contrast * input_power_w * loaded_q /
         ((1.0 + std::sqrt(1.0 - contrast)) * constants::hbar * omega0 * omega0);
}

double coupling_at_position(const Vec3& position, const ModeField& mode,
                            const RingParams& ring) {
  (void)ring;  // the field model depends on height only
  if (position.z < 0) {
    throw ValidationError("coupling_at_position: position is inside the dielectric (z < 0)");
  }
  return mode.g0_hz * std::exp(-position.z / mode.decay_length_m);
}

double atoms_in_mode(double density_m3, const ModeField& mode) {
  if (density_m3 < 0) throw ValidationError("atoms_in_mode: density must be >= 0");
  return density_m3 * mode.interaction_volume_m3;
}

namespace {

// Exact dip transmission at round-trip phase phi.
double transmission_at_phase(double r, double tau, double phi) {
  const double rho = r * tau;
  const double c = std::cos(phi);
  return (r * r + tau * tau - 2.0 * rho * c) / (1.0 + rho * rho - 2.0 * rho * c);
}

// Full width of the dip at half depth, as a fraction of the FSR.
double fwhm_phase_fraction(double r, double tau) {
  const double rho = r * tau;
  const double t_min = transmission_at_phase(r, tau, 0.0);
  const double t_max = transmission_at_phase(r, tau, kPi);
  const double h = 0.5 * (t_min + t_max);
  // solve (r^2 + tau^2 - 2 rho c) / (1 + rho^2 - 2 rho c) = h for c = cos(phi)
  const double c = (h * (1.0 + rho * rho) - r * r - tau * tau) / (2.0 * rho * (h - 1.0));
  if (!(c >= -1.0 && c <= 1.0)) {
    throw ValidationError("ring linewidth: dip has no half-depth point");
  }
  return std::acos(c) / kPi;  // 2 * phi_half / (2 pi)
}

}  // namespace

double ring_min_transmission(const RingParams& ring) {
  return transmission_at_phase(ring.coupling_r, ring.round_trip_tau, 0.0);
}

double ring_fwhm_hz(const RingParams& ring) {
  return fwhm_phase_fraction(ring.coupling_r, ring.round_trip_tau) * ring.fsr_hz();
}

RingParams ring_from_q_contrast(double loaded_q, double contrast,
                                double resonance_wavelength_m, double radius_m,
                                double n_eff, CouplingRegime regime) {
  if (!(loaded_q > 0)) throw ValidationError("ring calibration: Q must be positive");
  if (!(contrast > 0 && contrast < 1)) {
    throw ValidationError("ring calibration: contrast must lie in (0, 1)");
  }

  RingParams ring;
  ring.radius_m = radius_m;
  ring.resonance_wavelength_m = resonance_wavelength_m;
  ring.loaded_q = loaded_q;

  // Snap n_eff so a longitudinal mode sits exactly at the resonance
  // wavelength; the experiment does the same thermally.
  const double length = 2.0 * kPi * radius_m;
  const double mode_number = std::round(n_eff * length / resonance_wavelength_m);
  if (mode_number < 1) throw ValidationError("ring calibration: ring too small for the mode");
  ring.n_eff = mode_number * resonance_wavelength_m / length;
  ring.kappa_hz = kappa_from_q(loaded_q, ring.center_frequency_hz());

  const double target_fraction =
      (ring.center_frequency_hz() / loaded_q) / ring.fsr_hz();
  if (target_fraction >= 0.25) {
    throw ValidationError("ring calibration: requested linewidth is not small "
                          "compared to the FSR");
  }

  // For fixed contrast, r - tau follows from rho = r tau in closed form:
  //   1 - dT = Tmin / Tmax = d^2 (1 + rho)^2 / ((1 - rho)^2 (d^2 + 4 rho)).
  const double survival = 1.0 - contrast;
  const auto pair_for_rho = [&](double rho) {
    const double a = (1.0 + rho) * (1.0 + rho) - survival * (1.0 - rho) * (1.0 - rho);
    const double d2 = 4.0 * rho * survival * (1.0 - rho) * (1.0 - rho) / a;
    const double d = std::sqrt(d2);
    const double r = 0.5 * (d + std::sqrt(d2 + 4.0 * rho));
    return std::pair<double, double>(r, rho / r);  // r > tau: undercoupled
  };

  // fwhm is monotone decreasing in rho; bisect.
  double lo = 1e-6, hi = 1.0 - 1e-12;
  for (int iter = 0; iter < 200; ++iter) {
    const double rho = 0.5 * (lo + hi);
    const auto [r, tau] = pair_for_rho(rho);
    if (fwhm_phase_fraction(r, tau) > target_fraction) {
      lo = rho;
    } else {
      hi = rho;
    }
  }
  auto [r, tau] = pair_for_rho(0.5 * (lo + hi));
  if (regime == CouplingRegime::kOvercoupled) std::swap(r, tau);  // identical spectrum
  ring.coupling_r = r;
  ring.round_trip_tau = tau;
  ring.validate();
  return ring;
}

}  // namespace acmrr::cavity
