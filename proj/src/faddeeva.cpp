#include "acmrr/faddeeva.hpp"

#include <cassert>
#include <cmath>

namespace acmrr {

namespace {
using cd = std::complex<double>;
}

// Humlicek (1982) w4: the upper half plane is split by s = |x| + y into four
// regions with rational approximations in t = y - ix of increasing order.
// Region I equals the two-term asymptotic series, so accuracy improves to
// near machine precision in the far wings.
std::complex<double> faddeeva_w(double x, double y) {
  assert(y >= 0.0);
  const cd t(y, -x);
  const double s = std::fabs(x) + y;

  if (s >= 15.0) {  // region I
    return t * 0.5641896 / (0.5 + t * t);
  }
  if (s >= 5.5) {  // region II
    const cd u = t * t;
    return t * (1.410474 + u * 0.5641896) / (0.75 + u * (3.0 + u));
  }
  if (y >= 0.195 * std::fabs(x) - 0.176) {  // region III
    return (16.4955 + t * (20.20933 + t * (11.96482 + t * (3.778987 + t * 0.5642236)))) /
           (16.4955 + t * (38.82363 + t * (39.27121 + t * (21.69274 + t * (6.699398 + t)))));
  }
  // region IV
  const cd u = t * t;
  const cd num =
      t * (36183.31 -
           u * (3321.9905 -
                u * (1540.787 -
                     u * (219.0313 - u * (35.76683 - u * (1.320522 - u * 0.56419))))));
  const cd den =
      32066.6 -
      u * (24322.84 -
           u * (9022.228 -
                u * (2186.181 - u * (364.2191 - u * (61.57037 - u * (1.841439 - u))))));
  return std::exp(u) - num / den;
}

std::complex<double> faddeeva_w(std::complex<double> z) {
  return faddeeva_w(z.real(), z.imag());
}

}  // namespace acmrr
