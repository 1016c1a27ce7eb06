#ifndef ACMRR_STABILITY_HPP
#define ACMRR_STABILITY_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace acmrr::stability {

// Evenly sampled frequency-offset record. Values are absolute offsets in Hz
// (not fractional y); the Allan deviations below inherit that unit.
struct FrequencySeries {
  double sample_period_s = 0.0;
  std::vector<double> values_hz;
  std::string label;

  double span_s() const;
  void validate() const;
};

struct AllanCurve {
  std::vector<double> tau_s;
  std::vector<double> deviation_hz;
  std::vector<std::size_t> n_samples;  // overlapping differences per tau
};

// Overlapping Allan deviation estimator on frequency data:
//   sigma^2(m tau0) = 1/(2 m^2 (M - 2m + 1)) sum_j [ sum_{i=j}^{j+m-1} (y_{i+m} - y_i) ]^2.
// Requested taus must lie in [tau0, span/3]; non-integer multiples of tau0
// are rounded down with a warning appended to *warnings.
AllanCurve allan_deviation(const FrequencySeries& series, std::span<const double> taus_s,
                           std::vector<std::string>* warnings = nullptr);

// Octave-spaced tau grid from one sample period up to a third of the record.
std::vector<double> default_tau_grid(const FrequencySeries& series);

enum class NoiseKind { kWhiteFm, kRandomWalkFm };

// White FM: iid Gaussian samples with the given standard deviation.
// Random-walk FM: cumulative sum of Gaussian steps of that standard deviation.
FrequencySeries synthesize_noise(NoiseKind kind, double level_hz, std::size_t n,
                                 double sample_period_s, std::uint64_t seed);

}  // namespace acmrr::stability

#endif
