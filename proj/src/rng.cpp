#include "acmrr/rng.hpp"

#include <cmath>

namespace acmrr {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stream_index) {
  std::uint64_t state = master_seed ^ (0x6a09e667f3bcc909ULL + stream_index);
  std::uint64_t mixed = splitmix64(state);
  // one extra round decorrelates adjacent stream indices
  return splitmix64(mixed);
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t Rng::next_u64() { return engine_(); }

double Rng::uniform() {
  // 53 random bits into [0, 1)
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  // Box-Muller; u1 in (0,1] so the log is finite
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * 3.14159265358979323846 * u2;
  cached_normal_ = radius * std::sin(angle);
  has_cached_normal_ = true;
  return radius * std::cos(angle);
}

double Rng::normal(double mean, double sigma) { return mean + sigma * normal(); }

std::uint64_t Rng::poisson(double mean) {
  if (mean <= 0.0) return 0;
  // inter-arrival accumulation in log space, O(mean)
  std::uint64_t count = 0;
  double sum = 0.0;
  while (true) {
    sum += -std::log(1.0 - uniform());
    if (sum >= mean) return count;
    ++count;
  }
}

}  // namespace acmrr
