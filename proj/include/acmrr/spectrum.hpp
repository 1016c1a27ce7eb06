#ifndef ACMRR_SPECTRUM_HPP
#define ACMRR_SPECTRUM_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace acmrr {

// A transmission spectrum on a detuning grid, plus the provenance metadata
// that travels with it through files. Serialized as CSV with a '#'-prefixed
// header (see io.hpp); all numbers round-trip at full precision.
struct SpectrumTrace {
  std::vector<double> detuning_hz;
  std::vector<double> transmission;

  std::string scenario;
  std::string kind = "simulated";  // "simulated" or "measured"
  std::uint64_t seed = 0;
  double power_w = 0.0;
  double temperature_k = 0.0;
  // Absolute frequency of detuning = 0 (used to derive Q from linewidths).
  double reference_frequency_hz = 384.2304844685e12;

  // Grid must be strictly increasing and sizes must match.
  void validate() const;
};

std::vector<double> linspace(double lo, double hi, int n);

}  // namespace acmrr

#endif
