#include "acmrr/cqed.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "acmrr/constants.hpp"
#include "acmrr/errors.hpp"
#include "acmrr/rng.hpp"

namespace acmrr::cqed {

namespace {
constexpr double kPi = constants::pi;
}

void InteractionRegion::validate() const {
  if (!(ring_radius_m > 0 && width_m > 0 && depth_m > 0)) {
    throw ValidationError("interaction region: all dimensions must be positive");
  }
}

InteractionRegion InteractionRegion::around_ring(const cavity::RingParams& ring,
                                                 const cavity::ModeField& mode,
                                                 double depth_factor) {
  if (!(depth_factor > 0)) {
    throw ValidationError("interaction region: depth factor must be positive");
  }
  InteractionRegion region;
  region.ring_radius_m = ring.radius_m;
  region.depth_m = depth_factor * mode.decay_length_m;
  // Pin the shell volume to the interaction volume so that atom counts from
  // densities agree with atoms_in_mode regardless of the depth choice.
  region.width_m =
      mode.interaction_volume_m3 / (2.0 * kPi * region.ring_radius_m * region.depth_m);
  region.validate();
  return region;
}

AtomEnsemble place_atoms(const CountSpec& count, const InteractionRegion& region,
                         const vapor::VaporState& vapor, const cavity::ModeField& mode,
                         const cavity::RingParams& ring, std::uint64_t seed) {
  region.validate();
  vapor.validate();

  Rng rng(seed);
  std::uint64_t n = 0;
  switch (count.mode) {
    case CountSpec::Mode::kFixed:
      n = count.fixed_count;
      break;
    case CountSpec::Mode::kFromDensity:
      n = static_cast<std::uint64_t>(
          std::llround(vapor.density_m3 * region.volume_m3()));
      break;
    case CountSpec::Mode::kPoisson:
      n = rng.poisson(vapor.density_m3 * region.volume_m3());
      break;
  }

  AtomEnsemble ensemble;
  ensemble.seed = seed;
  ensemble.temperature_k = vapor.temperature_k;
  ensemble.atoms.reserve(n);
  const double sigma_hz = vapor.doppler_fwhm_hz / 2.3548200450309493;
  for (std::uint64_t i = 0; i < n; ++i) {
    Atom atom;
    // cylindrical shell over the ring top surface
    const double arc = rng.uniform(0.0, 2.0 * kPi);
    const double radial =
        region.ring_radius_m + rng.uniform(-0.5 * region.width_m, 0.5 * region.width_m);
    const double height = rng.uniform(0.0, region.depth_m);
    atom.position = {radial * std::cos(arc), radial * std::sin(arc), height};
    atom.detuning_hz = rng.normal(0.0, sigma_hz);
    atom.coupling_hz = cavity::coupling_at_position(atom.position, mode, ring);
    ensemble.atoms.push_back(atom);
  }
  return ensemble;
}

SpectrumTrace weak_drive_spectrum(const AtomEnsemble& ensemble, double kappa_hz,
                                  double gamma_hz, std::span<const double> detunings_hz,
                                  const WeakDriveOptions& options) {
  if (!(kappa_hz > 0 && gamma_hz > 0)) {
    throw ValidationError("weak_drive_spectrum: kappa and gamma must be positive");
  }
  const double kappa_ext = options.kappa_ext_hz < 0 ? 0.5 * kappa_hz : options.kappa_ext_hz;
  if (!(kappa_ext > 0 && kappa_ext <= kappa_hz)) {
    throw ValidationError("weak_drive_spectrum: kappa_ext must lie in (0, kappa]");
  }

  SpectrumTrace trace;
  trace.detuning_hz.assign(detunings_hz.begin(), detunings_hz.end());
  trace.transmission.resize(detunings_hz.size());
  trace.seed = ensemble.seed;
  trace.temperature_k = ensemble.temperature_k;

  for (std::size_t i = 0; i < detunings_hz.size(); ++i) {
    const double probe = detunings_hz[i];
    std::complex<double> atom_sum{0.0, 0.0};
    for (const Atom& atom : ensemble.atoms) {
      atom_sum += atom.coupling_hz * atom.coupling_hz /
                  std::complex<double>(gamma_hz, probe - atom.detuning_hz);
    }
    const std::complex<double> denominator =
        std::complex<double>(kappa_hz, probe - options.cavity_detuning_hz) + atom_sum;
    trace.transmission[i] = std::norm(1.0 - 2.0 * kappa_ext / denominator);
  }
  trace.validate();
  return trace;
}

SpectrumTrace average_spectra(const std::function<AtomEnsemble(int)>& make_ensemble,
                              int n_configs, double kappa_hz, double gamma_hz,
                              std::span<const double> detunings_hz,
                              const WeakDriveOptions& options) {
  if (n_configs < 1) throw ValidationError("average_spectra: n_configs must be >= 1");

  SpectrumTrace mean;
  mean.detuning_hz.assign(detunings_hz.begin(), detunings_hz.end());
  mean.transmission.assign(detunings_hz.size(), 0.0);
  // fixed configuration order keeps the reduction deterministic
  for (int config = 0; config < n_configs; ++config) {
    const SpectrumTrace one =
        weak_drive_spectrum(make_ensemble(config), kappa_hz, gamma_hz, detunings_hz, options);
    if (config == 0) {
      mean.seed = one.seed;
      mean.temperature_k = one.temperature_k;
    }
    for (std::size_t i = 0; i < mean.transmission.size(); ++i) {
      mean.transmission[i] += one.transmission[i];
    }
  }
  for (double& value : mean.transmission) value /= n_configs;
  return mean;
}

std::optional<double> extract_splitting(const SpectrumTrace& trace, double prominence) {
  trace.validate();
  const auto& t = trace.transmission;
  const std::size_t n = t.size();

  std::vector<std::size_t> minima;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (t[i] < t[i - 1] && t[i] <= t[i + 1]) minima.push_back(i);
  }
  if (minima.size() < 2) return std::nullopt;

  // two deepest minima with a sufficiently prominent barrier between them
  std::optional<std::pair<std::size_t, std::size_t>> best;
  double best_depth = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < minima.size(); ++a) {
    for (std::size_t b = a + 1; b < minima.size(); ++b) {
      const std::size_t i = minima[a], j = minima[b];
      const double barrier = *std::max_element(t.begin() + i, t.begin() + j + 1);
      if (std::min(barrier - t[i], barrier - t[j]) < prominence) continue;
      const double depth = t[i] + t[j];
      if (depth < best_depth) {
        best_depth = depth;
        best = {i, j};
      }
    }
  }
  if (!best) return std::nullopt;
  return trace.detuning_hz[best->second] - trace.detuning_hz[best->first];
}

CooperativityReport cooperativity_report(double g_collective_hz, double atom_number,
                                         double kappa_hz, double gamma_hz) {
  if (!(g_collective_hz > 0 && kappa_hz > 0 && gamma_hz > 0)) {
    throw ValidationError("cooperativity_report: rates must be positive");
  }
  if (!(atom_number > 0)) {
    throw ValidationError("cooperativity_report: atom number must be positive");
  }
  CooperativityReport report;
  report.g_collective_hz = g_collective_hz;
  report.atom_number = atom_number;
  report.g0_bar_hz = g_collective_hz / std::sqrt(atom_number);
  report.cooperativity =
      g_collective_hz * g_collective_hz / (2.0 * kappa_hz * gamma_hz);
  report.single_atom_cooperativity = report.cooperativity / atom_number;
  return report;
}

CooperativityReport cooperativity_from_single_atom(double g0_bar_hz, double atom_number,
                                                   double kappa_hz, double gamma_hz) {
  return cooperativity_report(g0_bar_hz * std::sqrt(atom_number), atom_number, kappa_hz,
                              gamma_hz);
}

}  // namespace acmrr::cqed
