#ifndef ACMRR_LINDBLAD_HPP
#define ACMRR_LINDBLAD_HPP

#include <array>

namespace acmrr::cqed {

// Driven dissipative Jaynes-Cummings model for up to two atoms, used as a
// numerically exact oracle for the linear-response and saturation models.
// All rates and detunings are ordinary frequencies (Hz); steady states are
// invariant under a common rescaling of rates, so no 2 pi factors appear.
struct LindbladParams {
  int n_atoms = 1;            // 0, 1 or 2
  int photon_truncation = 5;  // Fock-space dimension (>= 3)
  std::array<double, 2> coupling_hz = {0.0, 0.0};
  std::array<double, 2> atom_detuning_hz = {0.0, 0.0};
  double kappa_hz = 0.0;      // cavity field decay rate
  double kappa_ext_hz = -1.0; // <0: critically coupled (kappa / 2)
  double gamma_hz = 0.0;      // total atomic coherence decay rate
  double natural_linewidth_hz = 6.0e6;  // population decay channel
  // Coherent drive: H += i eps (a^dag - a) in the rotating frame; the input
  // amplitude is a_in = eps / sqrt(2 kappa_ext), |a_in|^2 a photon flux in
  // the same frequency units as the rates.
  double drive_amplitude = 0.0;
  double drive_detuning_hz = 0.0;  // drive frequency minus atomic reference

  void validate() const;
};

struct LindbladResult {
  double photon_number = 0.0;  // <a^dag a> in steady state
  double transmission = 0.0;   // |1 - sqrt(2 k_ext) <a> / a_in|^2
};

// Steady state of the master equation. Solved at the requested truncation and
// at truncation + 2; if the two disagree by more than 1e-3 relative, an
// AccuracyError is thrown.
LindbladResult lindblad_steady_state(const LindbladParams& params);

}  // namespace acmrr::cqed

#endif
