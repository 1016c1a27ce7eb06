#ifndef ACMRR_FITTING_HPP
#define ACMRR_FITTING_HPP

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "acmrr/cavity.hpp"
#include "acmrr/saturation.hpp"
#include "acmrr/spectrum.hpp"
#include "acmrr/vapor.hpp"

namespace acmrr::fitting {

struct FitParameter {
  std::string name;
  double value = 0.0;
  double ci95 = 0.0;  // 95% confidence half-width
  bool at_lower_bound = false;
};

struct FitResult {
  std::vector<FitParameter> parameters;
  double residual_norm = 0.0;  // sqrt(sum of squared weighted residuals)
  bool converged = false;
  int iterations = 0;
  bool ill_conditioned = false;
  std::vector<double> covariance;  // row-major n_params x n_params

  const FitParameter& parameter(std::string_view name) const;
  double value(std::string_view name) const;
  double ci95(std::string_view name) const;
};

struct LmOptions {
  int max_iterations = 200;
  double cost_tol = 1e-14;  // relative cost reduction
  double step_tol = 1e-12;  // relative parameter step
  double fd_step_rel = 1e-6;
};

// Fills residuals (length fixed at problem construction) for the given
// parameter vector.
using ResidualFn = std::function<void(std::span<const double>, std::span<double>)>;

// Damped Gauss-Newton (Levenberg-Marquardt) with forward-difference Jacobians
// and simple lower-bound clamping. Confidence intervals come from the
// linearized covariance (J^T J)^-1 scaled by the reduced chi-square, with a
// Student-t quantile for the 95% half-widths. Throws FitError if the maximum
// iteration count is reached without convergence.
FitResult levenberg_marquardt(const ResidualFn& residuals, int n_residuals,
                              std::vector<double> initial,
                              std::vector<std::string> names,
                              std::vector<double> lower_bounds = {},
                              const LmOptions& options = {});

// Two-sided 97.5% Student-t quantile (the 95% CI multiplier).
double student_t_975(int dof);

// Lorentzian dip fit: parameters center_hz, fwhm_hz, depth, baseline, plus a
// derived loaded_q from the trace's reference frequency.
FitResult fit_lorentzian(const SpectrumTrace& trace);

// Fits |transfer_function|^2 with the Rb index from the vapor model to a
// measured trace, with the interaction factor (and a transmission scale) as
// the free parameters. Ring and vapor parameters are fixed by calibration.
FitResult fit_interaction_factor(const SpectrumTrace& trace, const cavity::RingParams& ring,
                                 const vapor::VaporState& vapor_state,
                                 const vapor::RbD2Line& line = vapor::RbD2Line::rb87_d2(),
                                 bool fit_scale = true);

// Weighted fit of alpha(P) = alpha0 / (1 + P / P_sat) to measured points.
// A degenerate design (all powers far below the fitted P_sat) is flagged as
// ill-conditioned; the widened confidence intervals are reported as-is.
FitResult fit_saturation(std::span<const saturation::SaturationPoint> points);

}  // namespace acmrr::fitting

#endif
