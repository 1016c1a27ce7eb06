#include <doctest.h>

#include <cmath>
#include <vector>

#include "acmrr/rng.hpp"

using acmrr::derive_seed;
using acmrr::Rng;

TEST_CASE("rng is bit-reproducible for a fixed seed") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.uniform() == b.uniform());
    CHECK(a.normal() == b.normal());
  }
  Rng c(43);
  bool any_different = false;
  Rng a2(42);
  for (int i = 0; i < 16; ++i) any_different |= (a2.next_u64() != c.next_u64());
  CHECK(any_different);
}

TEST_CASE("uniform stays in [0,1) and has the right mean") {
  Rng rng(7);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("normal moments") {
  Rng rng(11);
  const int n = 100000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / n;
  const double stddev = std::sqrt(sum2 / n - mean * mean);
  CHECK(std::fabs(mean) < 3.0 / std::sqrt(static_cast<double>(n)));
  CHECK(stddev == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("derived stream seeds differ and are deterministic") {
  CHECK(derive_seed(1, 0) == derive_seed(1, 0));
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 100; ++i) seeds.push_back(derive_seed(12345, i));
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    for (std::size_t j = i + 1; j < seeds.size(); ++j) REQUIRE(seeds[i] != seeds[j]);
  }
  CHECK(derive_seed(1, 5) != derive_seed(2, 5));
}

TEST_CASE("poisson sampler has the right mean and variance") {
  Rng rng(3);
  const double lambda = 53.0;
  const int n = 20000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double k = static_cast<double>(rng.poisson(lambda));
    sum += k;
    sum2 += k * k;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(mean == doctest::Approx(lambda).epsilon(0.02));
  CHECK(var == doctest::Approx(lambda).epsilon(0.06));
  CHECK(rng.poisson(0.0) == 0);
}
