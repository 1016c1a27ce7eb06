#include "acmrr/stability.hpp"

#include <cmath>

#include "acmrr/errors.hpp"
#include "acmrr/rng.hpp"

namespace acmrr::stability {

double FrequencySeries::span_s() const {
  return sample_period_s * static_cast<double>(values_hz.size());
}

void FrequencySeries::validate() const {
  if (!(sample_period_s > 0)) {
    throw ValidationError("frequency series: sample period must be positive");
  }
  if (values_hz.size() < 2) {
    throw ValidationError("frequency series: needs at least 2 samples");
  }
}

AllanCurve allan_deviation(const FrequencySeries& series, std::span<const double> taus_s,
                           std::vector<std::string>* warnings) {
  series.validate();
  const std::size_t total = series.values_hz.size();
  const double tau0 = series.sample_period_s;

  // prefix sums make each averaging window an O(1) lookup
  std::vector<double> prefix(total + 1, 0.0);
  for (std::size_t i = 0; i < total; ++i) prefix[i + 1] = prefix[i] + series.values_hz[i];
  const auto window_sum = [&](std::size_t start, std::size_t m) {
    return prefix[start + m] - prefix[start];
  };

  AllanCurve curve;
  for (double tau : taus_s) {
    if (!(tau >= tau0 * (1.0 - 1e-9))) {
      throw ValidationError("allan_deviation: tau below the sample period");
    }
    if (tau > series.span_s() / 3.0 * (1.0 + 1e-9)) {
      throw ValidationError("allan_deviation: tau exceeds a third of the record");
    }
    const double ratio = tau / tau0;
    std::size_t m = static_cast<std::size_t>(std::floor(ratio + 1e-9));
    if (std::fabs(ratio - std::round(ratio)) > 1e-9 && warnings != nullptr) {
      warnings->push_back("tau " + std::to_string(tau) +
                          " s is not a multiple of the sample period; rounded down to " +
                          std::to_string(static_cast<double>(m) * tau0) + " s");
    }
    if (m < 1 || total < 2 * m) {
      throw ValidationError("allan_deviation: series too short for tau " + std::to_string(tau));
    }

    // overlapping estimator on frequency data
    const std::size_t n_terms = total - 2 * m + 1;
    double accum = 0.0;
    for (std::size_t j = 0; j < n_terms; ++j) {
      const double diff = window_sum(j + m, m) - window_sum(j, m);
      accum += diff * diff;
    }
    const double avar =
        accum / (2.0 * static_cast<double>(m) * static_cast<double>(m) *
                 static_cast<double>(n_terms));
    curve.tau_s.push_back(static_cast<double>(m) * tau0);
    curve.deviation_hz.push_back(std::sqrt(avar));
    curve.n_samples.push_back(n_terms);
  }
  return curve;
}

std::vector<double> default_tau_grid(const FrequencySeries& series) {
  series.validate();
  std::vector<double> taus;
  const double limit = series.span_s() / 3.0;
  for (double tau = series.sample_period_s; tau <= limit; tau *= 2.0) {
    taus.push_back(tau);
  }
  return taus;
}

FrequencySeries synthesize_noise(NoiseKind kind, double level_hz, std::size_t n,
                                 double sample_period_s, std::uint64_t seed) {
  if (n < 16) throw ValidationError("synthesize_noise: need at least 16 samples");
  if (!(sample_period_s > 0)) {
    throw ValidationError("synthesize_noise: sample period must be positive");
  }
  if (level_hz < 0) throw ValidationError("synthesize_noise: level must be >= 0");

  FrequencySeries series;
  series.sample_period_s = sample_period_s;
  series.values_hz.resize(n);
  Rng rng(seed);
  switch (kind) {
    case NoiseKind::kWhiteFm:
      series.label = "white_fm";
      for (auto& value : series.values_hz) value = level_hz * rng.normal();
      break;
    case NoiseKind::kRandomWalkFm: {
      series.label = "random_walk_fm";
      double walker = 0.0;
      for (auto& value : series.values_hz) {
        walker += level_hz * rng.normal();
        value = walker;
      }
      break;
    }
    default:
      throw UsageError("synthesize_noise: unknown noise kind");
  }
  return series;
}

}  // namespace acmrr::stability
