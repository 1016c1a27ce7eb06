#include <doctest.h>

#include <cmath>
#include <complex>

#include "acmrr/cavity.hpp"
#include "acmrr/constants.hpp"
#include "acmrr/errors.hpp"
#include "acmrr/rng.hpp"
#include "acmrr/spectrum.hpp"

using namespace acmrr;
using namespace acmrr::cavity;
using cd = std::complex<double>;

namespace {

constexpr double kLambda = 780.241209686e-9;
constexpr double kNu0 = constants::speed_of_light / kLambda;

// ring with a longitudinal mode snapped to the resonance wavelength
RingParams snapped_ring(double r, double tau, double n_eff_target = 1.8) {
  RingParams ring;
  ring.radius_m = 20e-6;
  ring.resonance_wavelength_m = kLambda;
  const double length = ring.ring_length_m();
  const double mode_number = std::round(n_eff_target * length / kLambda);
  ring.n_eff = mode_number * kLambda / length;
  ring.coupling_r = r;
  ring.round_trip_tau = tau;
  return ring;
}

}  // namespace

TEST_CASE("lossless all-pass ring has unit transmission") {
  const RingParams ring = snapped_ring(0.9, 1.0);
  for (double detuning = -5e9; detuning <= 5e9; detuning += 0.7e9) {
    CHECK(std::abs(transfer_function(detuning, ring, cd(1.0, 0.0), 0.0)) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("critical coupling nulls the on-resonance transmission") {
  const RingParams ring = snapped_ring(0.98, 0.98);
  CHECK(std::norm(transfer_function(0.0, ring, cd(1.0, 0.0), 0.0)) < 1e-15);
}

TEST_CASE("calibrated ring reproduces the measured linewidth") {
  const RingParams ring = ring_from_q_contrast(4.3e5, 0.9, kLambda, 20e-6, 1.8);
  // exact dip metrics match the calibration inputs
  CHECK(ring_fwhm_hz(ring) == doctest::Approx(kNu0 / 4.3e5).epsilon(1e-6));
  CHECK(1.0 - ring_min_transmission(ring) == doctest::Approx(0.9).epsilon(1e-6));

  // and the swept transfer function shows the ~890 MHz full width
  const auto grid = linspace(-2e9, 2e9, 8001);
  std::vector<double> transmission(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    transmission[i] = std::norm(transfer_function(grid[i], ring, cd(1.0, 0.0), 0.0));
  }
  const double t_min = *std::min_element(transmission.begin(), transmission.end());
  const double half = 0.5 * (1.0 + t_min);
  double left = 0, right = 0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (transmission[i - 1] > half && transmission[i] <= half) left = grid[i];
    if (transmission[i - 1] <= half && transmission[i] > half) right = grid[i];
  }
  CHECK(right - left == doctest::Approx(8.936e8).epsilon(0.01));  // nu0 / Q
  CHECK(0.5 * (right - left) == doctest::Approx(4.45e8).epsilon(0.02));  // kappa
}

TEST_CASE("overcoupled branch swaps r and tau but keeps the spectrum") {
  const RingParams under = ring_from_q_contrast(2.2e5, 0.8, kLambda, 20e-6, 1.8,
                                                CouplingRegime::kUndercoupled);
  const RingParams over = ring_from_q_contrast(2.2e5, 0.8, kLambda, 20e-6, 1.8,
                                               CouplingRegime::kOvercoupled);
  CHECK(under.coupling_r > under.round_trip_tau);
  CHECK(over.coupling_r < over.round_trip_tau);
  CHECK(under.coupling_r == doctest::Approx(over.round_trip_tau).epsilon(1e-12));
  for (double detuning : {-1e9, 0.0, 0.3e9}) {
    CHECK(std::norm(transfer_function(detuning, under, cd(1.0, 0.0), 0.0)) ==
          doctest::Approx(std::norm(transfer_function(detuning, over, cd(1.0, 0.0), 0.0)))
              .epsilon(1e-10));
  }
}

TEST_CASE("transfer function is FSR-periodic for constant n_eff") {
  const RingParams ring = snapped_ring(0.98, 0.995);
  const double fsr = ring.fsr_hz();
  for (double detuning : {-0.4e9, 0.0, 1.1e9}) {
    const double a = std::abs(transfer_function(detuning, ring, cd(1.0, 0.0), 0.0));
    const double b = std::abs(transfer_function(detuning + fsr, ring, cd(1.0, 0.0), 0.0));
    CHECK(a == doctest::Approx(b).epsilon(1e-9));
  }
}

TEST_CASE("passive ring with absorbing cladding keeps |E| <= 1") {
  Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const double r = rng.uniform(0.05, 0.995);
    const double tau = rng.uniform(0.05, 1.0);
    const RingParams ring = snapped_ring(r, tau);
    const cd n_rb(1.0 + rng.uniform(-1e-4, 1e-4), rng.uniform(0.0, 2e-4));
    const double interaction_factor = rng.uniform(0.0, 1.0);
    const double detuning = rng.uniform(-5e9, 5e9);
    REQUIRE(std::abs(transfer_function(detuning, ring, n_rb, interaction_factor)) <=
            1.0 + 1e-12);
  }
}

TEST_CASE("transfer function singularity is reported") {
  // r tau e^{ikL} -> 1 needs round-trip gain; force it with an unphysical
  // negative absorption tuned to cancel the coupler loss exactly
  RingParams ring = snapped_ring(0.9999, 1.0);
  const double k0_length =
      2.0 * constants::pi / kLambda * ring.ring_length_m();
  const double gain = -std::log(ring.coupling_r * ring.round_trip_tau) / k0_length;
  const cd n_gain(1.0, -gain);
  CHECK_THROWS_AS(transfer_function(0.0, ring, n_gain, 1.0), ValidationError);
}

TEST_CASE("kappa from Q") {
  CHECK(kappa_from_q(4.3e5, 3.842e14) == doctest::Approx(4.467e8).epsilon(1e-3));
  CHECK(kappa_from_q(4.3e5, kNu0) == doctest::Approx(4.468e8).epsilon(1e-3));
  // doubling Q halves kappa exactly
  CHECK(kappa_from_q(2e5, kNu0) == doctest::Approx(2.0 * kappa_from_q(4e5, kNu0)).epsilon(1e-15));
  // Q -> infinity limit
  CHECK(kappa_from_q(1e18, kNu0) < 1e-3);
  CHECK(q_from_kappa(kappa_from_q(4.3e5, kNu0), kNu0) == doctest::Approx(4.3e5).epsilon(1e-12));
}

TEST_CASE("intracavity photon number") {
  const double nu0 = 3.8423e14;
  // heater device working point: dT = 0.8, 3 nW, Q = 2.2e5
  const double n = intracavity_photons(0.8, 3e-9, 2.2e5, nu0);
  CHECK(n == doctest::Approx(0.5936).epsilon(0.01));
  CHECK(n > 0.55);
  CHECK(n < 0.75);

  CHECK(intracavity_photons(0.0, 3e-9, 2.2e5, nu0) == 0.0);
  // linear in input power, exactly
  const double n1 = intracavity_photons(0.8, 1e-9, 2.2e5, nu0);
  const double n2 = intracavity_photons(0.8, 2e-9, 2.2e5, nu0);
  CHECK(n2 == doctest::Approx(2.0 * n1).epsilon(1e-15));

  CHECK_THROWS_AS(intracavity_photons(1.5, 1e-9, 2.2e5, nu0), ValidationError);
  CHECK_THROWS_AS(intracavity_photons(-0.1, 1e-9, 2.2e5, nu0), ValidationError);
}

TEST_CASE("evanescent coupling profile") {
  ModeField mode;
  mode.g0_hz = 330e6;
  mode.decay_length_m = 4.1e-8;
  const RingParams ring = snapped_ring(0.9, 0.99);

  CHECK(coupling_at_position({1e-5, 0, 0.0}, mode, ring) == mode.g0_hz);
  CHECK(coupling_at_position({0, 0, mode.decay_length_m}, mode, ring) ==
        doctest::Approx(mode.g0_hz / std::exp(1.0)).epsilon(1e-12));
  CHECK(coupling_at_position({0, 0, 10.0 * mode.decay_length_m}, mode, ring) <
        1e-4 * mode.g0_hz);
  CHECK_THROWS_AS(coupling_at_position({0, 0, -1e-9}, mode, ring), ValidationError);
}

TEST_CASE("atoms in the mode volume") {
  ModeField mode;
  mode.decay_length_m = 4.1e-8;
  mode.interaction_volume_m3 = 11.2e-18;
  CHECK(atoms_in_mode(4.7e18, mode) == doctest::Approx(52.64).epsilon(1e-3));
  CHECK(std::round(atoms_in_mode(4.7e18, mode)) == 53.0);
  CHECK(atoms_in_mode(0.0, mode) == 0.0);
  ModeField doubled = mode;
  doubled.interaction_volume_m3 *= 2.0;
  CHECK(atoms_in_mode(4.7e18, doubled) == doctest::Approx(2.0 * atoms_in_mode(4.7e18, mode))
                                              .epsilon(1e-15));
  CHECK_THROWS_AS(atoms_in_mode(-1.0, mode), ValidationError);
}

TEST_CASE("default decay length follows the effective index") {
  const double decay = evanescent_decay_length(kLambda, 1.8);
  CHECK(decay == doctest::Approx(kLambda / (4.0 * constants::pi * std::sqrt(1.8 * 1.8 - 1.0)))
                     .epsilon(1e-15));
  CHECK_THROWS_AS(evanescent_decay_length(kLambda, 0.9), ValidationError);
}

TEST_CASE("ring parameter validation") {
  RingParams ring = snapped_ring(0.9, 0.99);
  CHECK_NOTHROW(ring.validate());
  SUBCASE("kappa/Q consistency enforced at 1%") {
    ring.loaded_q = 4.3e5;
    ring.kappa_hz = kappa_from_q(4.3e5, ring.center_frequency_hz()) * 1.02;
    CHECK_THROWS_AS(ring.validate(), ValidationError);
    ring.kappa_hz = kappa_from_q(4.3e5, ring.center_frequency_hz()) * 1.005;
    CHECK_NOTHROW(ring.validate());
  }
  SUBCASE("r outside (0,1)") {
    ring.coupling_r = 1.0;
    CHECK_THROWS_AS(ring.validate(), ValidationError);
  }
  SUBCASE("tau outside (0,1]") {
    ring.round_trip_tau = 1.1;
    CHECK_THROWS_AS(ring.validate(), ValidationError);
  }
}
