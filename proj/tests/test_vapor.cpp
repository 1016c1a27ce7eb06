#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "acmrr/constants.hpp"
#include "acmrr/errors.hpp"
#include "acmrr/rng.hpp"
#include "acmrr/spectrum.hpp"
#include "acmrr/vapor.hpp"

using namespace acmrr;
using namespace acmrr::vapor;

TEST_CASE("density reproduces the reference value at 100 C") {
  const double density = density_from_temperature(373.15);
  // device reference: 4.7e18 m^-3 at 100 C, within 10%
  CHECK(density == doctest::Approx(4.7e18).epsilon(0.10));
  // frozen value of the Nesmeyanov correlation itself (hand-evaluated)
  CHECK(density == doctest::Approx(4.808112e18).epsilon(1e-3));
}

TEST_CASE("density at 50 C matches the hand-evaluated correlation") {
  CHECK(density_from_temperature(323.15) == doctest::Approx(1.056344e17).epsilon(1e-3));
  // the Alcock alternative runs hotter at 100 C (hand-evaluated)
  CHECK(density_from_temperature(373.15, VaporPressureModel::kAlcock) ==
        doctest::Approx(6.011801e18).epsilon(1e-3));
}

TEST_CASE("density is strictly increasing and continuous on its domain") {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const double t1 = rng.uniform(250.0, 499.0);
    const double t2 = t1 + rng.uniform(1e-3, 1.0);
    REQUIRE(density_from_temperature(t2) > density_from_temperature(t1));
  }
  // small step, small relative change
  const double base = density_from_temperature(360.0);
  CHECK(density_from_temperature(360.0 + 1e-6) == doctest::Approx(base).epsilon(1e-6));
}

TEST_CASE("density rejects temperatures outside the model window") {
  CHECK_THROWS_AS(density_from_temperature(249.0), ValidationError);
  CHECK_THROWS_AS(density_from_temperature(501.0), ValidationError);
  CHECK_THROWS_WITH_AS(density_from_temperature(200.0),
                       doctest::Contains("[250 K, 500 K]"), ValidationError);
}

TEST_CASE("doppler width") {
  const auto line = RbD2Line::rb87_d2();
  // closed-form evaluation with CODATA constants at 373 K
  CHECK(doppler_fwhm(373.0, line) == doctest::Approx(5.701217e8).epsilon(2e-4));
  // sqrt(T) scaling to 1e-12
  const double base = doppler_fwhm(300.0, line);
  CHECK(std::fabs(doppler_fwhm(1200.0, line) - 2.0 * base) < 1e-12 * base);
  // T -> 0 limit
  CHECK(doppler_fwhm(1e-16, line) < 1.0);
  CHECK_THROWS_AS(doppler_fwhm(0.0, line), ValidationError);
  CHECK_THROWS_AS(doppler_fwhm(-10.0, line), ValidationError);
}

TEST_CASE("doppler sampling statistics") {
  const auto line = RbD2Line::rb87_d2();
  const double temperature = 373.0;
  const double sigma = doppler_sigma(temperature, line);
  Rng rng(2024);
  const int n = 100000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = sample_doppler_detuning(temperature, line, rng);
    sum += d;
    sum2 += d * d;
  }
  const double mean = sum / n;
  const double stddev = std::sqrt(sum2 / n - mean * mean);
  CHECK(std::fabs(mean) < 3.0 * sigma / std::sqrt(static_cast<double>(n)));
  CHECK(stddev == doctest::Approx(sigma).epsilon(0.02));

  // bit reproducibility
  Rng r1(9), r2(9);
  CHECK(sample_doppler_detuning(temperature, line, r1) ==
        sample_doppler_detuning(temperature, line, r2));
}

TEST_CASE("doppler samples pass a Kolmogorov-Smirnov test at the 1% level") {
  const auto line = RbD2Line::rb87_d2();
  const double sigma = doppler_sigma(373.0, line);
  Rng rng(77);
  const int n = 10000;
  std::vector<double> samples(n);
  for (auto& s : samples) s = sample_doppler_detuning(373.0, line, rng);
  std::sort(samples.begin(), samples.end());
  double ks = 0.0;
  for (int i = 0; i < n; ++i) {
    const double cdf = 0.5 * std::erfc(-samples[static_cast<std::size_t>(i)] /
                                       (sigma * std::sqrt(2.0)));
    ks = std::max(ks, std::fabs(cdf - (i + 1.0) / n));
    ks = std::max(ks, std::fabs(cdf - static_cast<double>(i) / n));
  }
  CHECK(ks < 1.628 / std::sqrt(static_cast<double>(n)));  // 1% critical value
}

TEST_CASE("susceptibility basics") {
  const auto line = RbD2Line::rb87_d2();
  VaporState state = VaporState::at_temperature(373.15, line);

  SUBCASE("zero density gives exactly zero") {
    state.density_m3 = 0.0;
    const auto chi = susceptibility(1e9, state, line);
    CHECK(chi.real() == 0.0);
    CHECK(chi.imag() == 0.0);
  }

  SUBCASE("absorption is non-negative everywhere") {
    for (double detuning = -10e9; detuning <= 10e9; detuning += 37e6) {
      REQUIRE(susceptibility(detuning, state, line).imag() >= 0.0);
    }
  }
}

TEST_CASE("susceptibility symmetry for a symmetric line at zero detuning") {
  // single component centered at zero: dispersion odd, absorption even
  RbD2Line line = RbD2Line::rb87_d2();
  line.components = {{"single", 0.0, 1.0}};
  const VaporState state = VaporState::at_temperature(350.0, line);
  for (double detuning : {13e6, 221e6, 1.7e9, 6e9}) {
    const auto plus = susceptibility(detuning, state, line);
    const auto minus = susceptibility(-detuning, state, line);
    CHECK(minus.real() == doctest::Approx(-plus.real()).epsilon(1e-9));
    CHECK(minus.imag() == doctest::Approx(plus.imag()).epsilon(1e-9));
  }
}

TEST_CASE("zero-Doppler limit reproduces the two-level Lorentzian to 1e-6") {
  RbD2Line line = RbD2Line::rb87_d2();
  line.components = {{"single", 0.0, 1.0}};
  VaporState state = VaporState::at_temperature(373.15, line);
  state.doppler_fwhm_hz = 100.0;  // negligible next to the homogeneous width

  // independent two-level (Lorentzian) susceptibility
  const double lambda0 = line.wavelength_m();
  const double prefactor = state.density_m3 * lambda0 * lambda0 * lambda0 *
                           line.natural_linewidth_hz /
                           (4.0 * constants::pi * constants::pi);
  const double hwhm = 0.5 * (line.natural_linewidth_hz + state.transit_broadening_hz);
  for (double detuning : {0.0, 31e6, 150e6, -410e6, 2e9}) {
    const std::complex<double> oracle =
        -prefactor / std::complex<double>(detuning, hwhm);
    const auto chi = susceptibility(detuning, state, line);
    CHECK(std::abs(chi - oracle) / std::abs(oracle) < 1e-6);
  }
}

TEST_CASE("free-space transmission basics") {
  const auto line = RbD2Line::rb87_d2();
  VaporState state = VaporState::at_temperature(323.15, line);
  const auto grid = linspace(-6e9, 8e9, 401);

  SUBCASE("zero density transmits fully") {
    state.density_m3 = 0.0;
    for (double value : free_space_transmission(3e-3, state, line, grid)) {
      REQUIRE(value == 1.0);
    }
  }

  SUBCASE("values lie in [0,1] and doubling the path squares them") {
    const auto t1 = free_space_transmission(3e-3, state, line, grid);
    const auto t2 = free_space_transmission(6e-3, state, line, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      REQUIRE(t1[i] >= 0.0);
      REQUIRE(t1[i] <= 1.0);
      REQUIRE(t2[i] == doctest::Approx(t1[i] * t1[i]).epsilon(1e-12));
    }
  }

  CHECK_THROWS_AS(free_space_transmission(0.0, state, line, grid), ValidationError);
}

TEST_CASE("50 C spectrum shows the two ground-state dip groups") {
  // Both 87Rb ground-state manifolds absorb; the transmission minima sit
  // 6.528 GHz apart (hand-derived from the hyperfine table: the excited-state
  // structure pulls the dips ~4.5% closer than the bare 6.835 GHz ground
  // splitting).
  const auto line = RbD2Line::rb87_d2();
  const VaporState state = VaporState::at_temperature(323.15, line);
  const auto grid = linspace(-6e9, 8e9, 2801);
  const auto transmission = free_space_transmission(6e-3, state, line, grid);

  // two local minima, one per ground state
  std::vector<std::size_t> minima;
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    if (transmission[i] < transmission[i - 1] && transmission[i] <= transmission[i + 1]) {
      minima.push_back(i);
    }
  }
  REQUIRE(minima.size() == 2);
  CHECK(transmission[minima[0]] < 0.7);  // visible contrast at this path length
  const double separation = grid[minima[1]] - grid[minima[0]];
  CHECK(separation == doctest::Approx(6.52825e9).epsilon(0.01));
}

TEST_CASE("line table file matches the compiled-in table") {
  const auto compiled = RbD2Line::rb87_d2();
  const auto loaded = RbD2Line::from_file("data/rb87_d2_lines.dat");
  REQUIRE(loaded.components.size() == compiled.components.size());
  for (std::size_t i = 0; i < compiled.components.size(); ++i) {
    CHECK(loaded.components[i].offset_hz == compiled.components[i].offset_hz);
    CHECK(loaded.components[i].strength == compiled.components[i].strength);
  }
}

TEST_CASE("line table invariants are enforced") {
  RbD2Line line = RbD2Line::rb87_d2();
  SUBCASE("unsorted offsets") {
    std::swap(line.components[0], line.components[1]);
    CHECK_THROWS_AS(line.validate(), ValidationError);
  }
  SUBCASE("bad normalization") {
    line.components[0].strength *= 2.0;
    CHECK_THROWS_AS(line.validate(), ValidationError);
  }
  SUBCASE("non-positive strength") {
    line.components[0].strength = 0.0;
    CHECK_THROWS_AS(line.validate(), ValidationError);
  }
  SUBCASE("compiled table is valid") { CHECK_NOTHROW(line.validate()); }
}
