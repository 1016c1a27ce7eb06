#ifndef ACMRR_RNG_HPP
#define ACMRR_RNG_HPP

#include <cstdint>
#include <random>

namespace acmrr {

// splitmix64 step; also used to derive independent per-stream seeds so that
// Monte-Carlo configurations can be generated in any order (or in parallel)
// while remaining bit-identical for a fixed master seed.
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stream_index);

// Deterministic RNG. The distributions are implemented by hand rather than
// with std:: distribution objects because the standard leaves their sampling
// algorithms unspecified; sequences here depend only on mt19937_64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  double uniform();                       // [0, 1)
  double uniform(double lo, double hi);   // [lo, hi)
  double normal();                        // standard Gaussian, Box-Muller
  double normal(double mean, double sigma);
  // Knuth-style Poisson sampler, accumulated in log space.
  std::uint64_t poisson(double mean);

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace acmrr

#endif
