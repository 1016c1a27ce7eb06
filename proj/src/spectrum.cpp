#include "acmrr/spectrum.hpp"

#include "acmrr/errors.hpp"

namespace acmrr {

void SpectrumTrace::validate() const {
  if (detuning_hz.size() != transmission.size()) {
    throw DataError("spectrum trace: grid and transmission sizes differ");
  }
  if (detuning_hz.size() < 2) throw DataError("spectrum trace: needs at least 2 points");
  for (std::size_t i = 1; i < detuning_hz.size(); ++i) {
    if (!(detuning_hz[i] > detuning_hz[i - 1])) {
      throw DataError("spectrum trace: detuning grid must be strictly increasing");
    }
  }
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2) throw ValidationError("linspace: need at least 2 points");
  std::vector<double> grid(static_cast<std::size_t>(n));
  const double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) grid[static_cast<std::size_t>(i)] = lo + step * i;
  grid.back() = hi;
  return grid;
}

}  // namespace acmrr
