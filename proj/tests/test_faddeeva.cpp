#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "acmrr/faddeeva.hpp"

using acmrr::faddeeva_w;
using cd = std::complex<double>;

namespace {

// Independent reference: Maclaurin series of erf for small |z|, Laplace
// continued fraction for large |z|. Test-only; slow but accurate to ~1e-10
// over the region where the two branches are used.
cd erf_series(cd w) {
  const cd w2 = w * w;
  cd term = w;
  cd sum = w;
  for (int n = 1; n < 80; ++n) {
    term *= -w2 / static_cast<double>(n);
    sum += term / static_cast<double>(2 * n + 1);
  }
  return 2.0 / std::sqrt(M_PI) * sum;
}

cd reference_w(cd z) {
  if (std::abs(z) <= 4.0) {
    return std::exp(-z * z) * (1.0 - erf_series(cd(0.0, -1.0) * z));
  }
  // w(z) = (i/sqrt(pi)) / (z - 1/2/(z - 1/(z - 3/2/(z - ...))))
  cd tail(0.0, 0.0);
  for (int k = 40; k >= 1; --k) {
    tail = (0.5 * k) / (z - tail);
  }
  return cd(0.0, 1.0) / std::sqrt(M_PI) / (z - tail);
}

}  // namespace

TEST_CASE("faddeeva known values") {
  // w(0) = 1, w(i y) = exp(y^2) erfc(y)
  CHECK(faddeeva_w(0.0, 0.0).real() == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(std::abs(faddeeva_w(0.0, 0.0).imag()) < 1e-6);
  CHECK(faddeeva_w(0.0, 1.0).real() ==
        doctest::Approx(std::exp(1.0) * std::erfc(1.0)).epsilon(1e-4));
}

TEST_CASE("faddeeva matches the series/continued-fraction reference to 1e-4") {
  std::vector<double> xs, ys;
  for (double x = 0.0; x <= 30.0; x += 0.37) xs.push_back(x);
  for (double x = 40.0; x <= 1e4; x *= 1.7) xs.push_back(x);
  for (double y = 1e-3; y <= 1e4; y *= 2.1) ys.push_back(y);

  double worst = 0.0;
  for (double y : ys) {
    for (double x : xs) {
      const cd got = faddeeva_w(x, y);
      const cd ref = reference_w(cd(x, y));
      worst = std::max(worst, std::abs(got - ref) / std::abs(ref));
    }
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("faddeeva conjugate symmetry w(-x+iy) = conj(w(x+iy))") {
  for (double y : {0.01, 0.4, 2.0, 50.0}) {
    for (double x : {0.3, 1.7, 6.0, 21.0}) {
      const cd plus = faddeeva_w(x, y);
      const cd minus = faddeeva_w(-x, y);
      CHECK(minus.real() == doctest::Approx(plus.real()).epsilon(1e-12));
      CHECK(minus.imag() == doctest::Approx(-plus.imag()).epsilon(1e-12));
    }
  }
}

TEST_CASE("faddeeva far wings follow the asymptotic 1/z law") {
  // y >> 1: w ~ i / (sqrt(pi) z); relevant for the zero-Doppler limit. The
  // wing accuracy is limited by the 8-digit region-I coefficient, ~3e-8.
  const double y = 3e6;
  const cd got = faddeeva_w(150.0, y);
  const cd asymptotic = cd(0.0, 1.0) / (std::sqrt(M_PI) * cd(150.0, y));
  CHECK(std::abs(got - asymptotic) / std::abs(asymptotic) < 1e-7);
}
