#ifndef ACMRR_FADDEEVA_HPP
#define ACMRR_FADDEEVA_HPP

#include <complex>

namespace acmrr {

// Faddeeva function w(z) = exp(-z^2) erfc(-iz) for Im(z) >= 0, evaluated with
// Humlicek's four-region rational approximation (J. Quant. Spectrosc. Radiat.
// Transfer 27, 437 (1982)). Relative error <= 1e-4 over the upper half plane,
// much better in the far wings where the region-I expression coincides with
// the asymptotic series. Chosen over slower exact routines because spectrum
// fitting evaluates it in the inner loop.
std::complex<double> faddeeva_w(double x, double y);
std::complex<double> faddeeva_w(std::complex<double> z);

}  // namespace acmrr

#endif
