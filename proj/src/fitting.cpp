#include "acmrr/fitting.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "acmrr/errors.hpp"

namespace acmrr::fitting {

namespace {

// Regularized incomplete beta via Lentz continued fraction; used for the
// Student-t quantile so the CI multiplier is right at small dof too.
double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-14;
  constexpr double kTiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

double incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double front = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                                a * std::log(x) + b * std::log(1.0 - x));
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

}  // namespace

double student_t_975(int dof) {
  if (dof < 1) throw ValidationError("student_t_975: dof must be >= 1");
  // P(|T| > t) = I_{nu/(nu+t^2)}(nu/2, 1/2) = 0.05
  const double nu = static_cast<double>(dof);
  const auto tail = [&](double t) {
    return incomplete_beta(0.5 * nu, 0.5, nu / (nu + t * t));
  };
  double lo = 1.0, hi = 16.0;  // t_{.975} spans 1.96 (inf) to 12.71 (dof 1)
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (tail(mid) > 0.05 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

const FitParameter& FitResult::parameter(std::string_view name) const {
  for (const auto& p : parameters) {
    if (p.name == name) return p;
  }
  throw ValidationError("fit result has no parameter '" + std::string(name) + "'");
}

double FitResult::value(std::string_view name) const { return parameter(name).value; }
double FitResult::ci95(std::string_view name) const { return parameter(name).ci95; }

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Workspace {
  const ResidualFn& fn;
  int n_residuals;
  std::vector<double> scratch;

  double cost(std::span<const double> params, VectorXd& out) {
    fn(params, std::span<double>(scratch));
    for (int i = 0; i < n_residuals; ++i) out(i) = scratch[static_cast<std::size_t>(i)];
    return out.squaredNorm();
  }
};

}  // namespace

FitResult levenberg_marquardt(const ResidualFn& residuals, int n_residuals,
                              std::vector<double> initial, std::vector<std::string> names,
                              std::vector<double> lower_bounds, const LmOptions& options) {
  const int n_params = static_cast<int>(initial.size());
  if (n_params == 0) throw ValidationError("fit: no parameters");
  if (n_residuals < n_params) throw ValidationError("fit: fewer residuals than parameters");
  if (names.size() != initial.size()) throw ValidationError("fit: name/parameter mismatch");
  if (lower_bounds.empty()) {
    lower_bounds.assign(initial.size(), -std::numeric_limits<double>::infinity());
  }
  if (lower_bounds.size() != initial.size()) {
    throw ValidationError("fit: bound/parameter mismatch");
  }

  // parameter scales for finite-difference steps
  std::vector<double> scales(initial.size());
  for (std::size_t j = 0; j < initial.size(); ++j) {
    scales[j] = std::fabs(initial[j]) > 0 ? std::fabs(initial[j]) : 1.0;
  }

  VectorXd params(n_params);
  for (int j = 0; j < n_params; ++j) {
    params(j) = std::max(initial[static_cast<std::size_t>(j)],
                         lower_bounds[static_cast<std::size_t>(j)]);
  }

  Workspace work{residuals, n_residuals, std::vector<double>(static_cast<std::size_t>(n_residuals))};
  VectorXd res(n_residuals), res_trial(n_residuals), res_step(n_residuals);
  std::vector<double> p_view(initial.size());
  const auto as_span = [&](const VectorXd& v) {
    for (int j = 0; j < n_params; ++j) p_view[static_cast<std::size_t>(j)] = v(j);
    return std::span<const double>(p_view);
  };

  double cost = work.cost(as_span(params), res);
  MatrixXd jacobian(n_residuals, n_params);
  double lambda = 1e-3;
  bool converged = false;
  int iterations = 0;

  const auto fill_jacobian = [&](const VectorXd& at, const VectorXd& base) {
    VectorXd shifted = at;
    for (int j = 0; j < n_params; ++j) {
      const double step =
          options.fd_step_rel * std::max(std::fabs(at(j)), scales[static_cast<std::size_t>(j)]);
      shifted(j) = at(j) + step;
      work.cost(as_span(shifted), res_step);
      jacobian.col(j) = (res_step - base) / step;
      shifted(j) = at(j);
    }
  };

  for (; iterations < options.max_iterations && !converged; ++iterations) {
    fill_jacobian(params, res);
    const MatrixXd normal = jacobian.transpose() * jacobian;
    const VectorXd gradient = jacobian.transpose() * res;
    const double diag_floor = 1e-30 * std::max(normal.diagonal().maxCoeff(), 1e-300);

    bool accepted = false;
    while (!accepted) {
      MatrixXd damped = normal;
      for (int j = 0; j < n_params; ++j) {
        damped(j, j) += lambda * std::max(normal(j, j), diag_floor);
      }
      const VectorXd step = damped.ldlt().solve(-gradient);
      VectorXd trial = params + step;
      for (int j = 0; j < n_params; ++j) {
        trial(j) = std::max(trial(j), lower_bounds[static_cast<std::size_t>(j)]);
      }
      const double trial_cost = work.cost(as_span(trial), res_trial);
      if (trial_cost <= cost) {
        const double cost_drop = cost - trial_cost;
        double max_rel_step = 0.0;
        for (int j = 0; j < n_params; ++j) {
          max_rel_step = std::max(max_rel_step,
                                  std::fabs(trial(j) - params(j)) /
                                      std::max(std::fabs(params(j)),
                                               scales[static_cast<std::size_t>(j)]));
        }
        params = trial;
        res = res_trial;
        cost = trial_cost;
        lambda = std::max(lambda * 0.1, 1e-12);
        accepted = true;
        if (cost_drop <= options.cost_tol * std::max(cost, 1e-300) ||
            max_rel_step <= options.step_tol) {
          converged = true;
        }
      } else {
        lambda *= 10.0;
        if (lambda > 1e14) {
          // no descent direction left: at a (possibly bound-constrained) minimum
          converged = true;
          accepted = true;
        }
      }
    }
  }

  if (!converged) {
    throw FitError("fit did not converge after " + std::to_string(options.max_iterations) +
                   " iterations (residual norm " + std::to_string(std::sqrt(cost)) + ")");
  }

  // linearized covariance at the optimum, scaled by the reduced chi-square;
  // the normal matrix is normalized to unit diagonal first so that parameter
  // units do not masquerade as degeneracy
  fill_jacobian(params, res);
  const MatrixXd normal = jacobian.transpose() * jacobian;
  VectorXd diag_scale(n_params);
  for (int j = 0; j < n_params; ++j) {
    diag_scale(j) = normal(j, j) > 0 ? std::sqrt(normal(j, j)) : 1.0;
  }
  const MatrixXd scaled =
      diag_scale.cwiseInverse().asDiagonal() * normal * diag_scale.cwiseInverse().asDiagonal();
  Eigen::JacobiSVD<MatrixXd> svd(scaled, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double s_max = svd.singularValues()(0);
  const double s_min = svd.singularValues()(n_params - 1);
  const bool ill_conditioned = !(s_min > 1e-12 * s_max);

  const int dof = std::max(n_residuals - n_params, 1);
  const double variance_scale = cost / dof;
  MatrixXd covariance(n_params, n_params);
  {
    VectorXd inv_singular(n_params);
    for (int j = 0; j < n_params; ++j) {
      const double s = svd.singularValues()(j);
      inv_singular(j) = s > 1e-14 * s_max ? 1.0 / s : 0.0;
    }
    const MatrixXd scaled_inverse =
        svd.matrixV() * inv_singular.asDiagonal() * svd.matrixU().transpose();
    covariance = diag_scale.cwiseInverse().asDiagonal() * scaled_inverse *
                 diag_scale.cwiseInverse().asDiagonal() * variance_scale;
  }

  FitResult result;
  result.converged = true;
  result.iterations = iterations;
  result.residual_norm = std::sqrt(cost);
  result.ill_conditioned = ill_conditioned;
  const double t_multiplier = student_t_975(dof);
  for (int j = 0; j < n_params; ++j) {
    FitParameter parameter;
    parameter.name = names[static_cast<std::size_t>(j)];
    parameter.value = params(j);
    parameter.ci95 = t_multiplier * std::sqrt(std::max(covariance(j, j), 0.0));
    parameter.at_lower_bound =
        params(j) <= lower_bounds[static_cast<std::size_t>(j)] +
                         1e-12 * scales[static_cast<std::size_t>(j)];
    result.parameters.push_back(parameter);
  }
  result.covariance.resize(static_cast<std::size_t>(n_params) * n_params);
  for (int i = 0; i < n_params; ++i) {
    for (int j = 0; j < n_params; ++j) {
      result.covariance[static_cast<std::size_t>(i) * n_params + j] = covariance(i, j);
    }
  }
  return result;
}

FitResult fit_lorentzian(const SpectrumTrace& trace) {
  trace.validate();
  const auto& x = trace.detuning_hz;
  const auto& y = trace.transmission;
  const std::size_t n = x.size();
  if (n < 10) throw ValidationError("fit_lorentzian: need at least 10 points");

  // initial guesses from the dip geometry
  const std::size_t i_min = static_cast<std::size_t>(
      std::min_element(y.begin(), y.end()) - y.begin());
  double baseline = 0.0;
  {
    const std::size_t edge = std::max<std::size_t>(1, n / 10);
    for (std::size_t i = 0; i < edge; ++i) baseline += y[i] + y[n - 1 - i];
    baseline /= static_cast<double>(2 * edge);
  }
  const double depth0 = std::max(baseline - y[i_min], 1e-6);
  const double center0 = x[i_min];
  const double half_level = baseline - 0.5 * depth0;
  double left = x.front(), right = x.back();
  for (std::size_t i = i_min; i-- > 0;) {
    if (y[i] >= half_level) {
      left = x[i];
      break;
    }
  }
  for (std::size_t i = i_min + 1; i < n; ++i) {
    if (y[i] >= half_level) {
      right = x[i];
      break;
    }
  }
  const double fwhm0 = std::max(right - left, (x.back() - x.front()) / (n - 1.0));
  if (x.back() - x.front() < 3.0 * fwhm0) {
    throw ValidationError("fit_lorentzian: trace must span at least 3 linewidths");
  }

  const ResidualFn residuals = [&](std::span<const double> p, std::span<double> out) {
    const double center = p[0], fwhm = p[1], depth = p[2], base = p[3];
    const double hw2 = 0.25 * fwhm * fwhm;
    for (std::size_t i = 0; i < n; ++i) {
      const double dx = x[i] - center;
      out[i] = base - depth * hw2 / (dx * dx + hw2) - y[i];
    }
  };

  FitResult result = levenberg_marquardt(
      residuals, static_cast<int>(n), {center0, fwhm0, depth0, baseline},
      {"center_hz", "fwhm_hz", "depth", "baseline"},
      {-std::numeric_limits<double>::infinity(), 1e-3 * fwhm0, 0.0,
       -std::numeric_limits<double>::infinity()});

  // derived loaded Q (not part of the covariance matrix)
  const double center = result.value("center_hz");
  const double fwhm = result.value("fwhm_hz");
  const double q = (trace.reference_frequency_hz + center) / fwhm;
  const double sigma_f = result.ci95("fwhm_hz");
  const double sigma_c = result.ci95("center_hz");
  FitParameter derived;
  derived.name = "loaded_q";
  derived.value = q;
  derived.ci95 = std::sqrt(std::pow(q / fwhm * sigma_f, 2) + std::pow(sigma_c / fwhm, 2));
  result.parameters.push_back(derived);
  return result;
}

FitResult fit_interaction_factor(const SpectrumTrace& trace, const cavity::RingParams& ring,
                                 const vapor::VaporState& vapor_state,
                                 const vapor::RbD2Line& line, bool fit_scale) {
  trace.validate();
  ring.validate();
  const auto& x = trace.detuning_hz;
  const auto& y = trace.transmission;
  const std::size_t n = x.size();

  // the Rb index does not depend on the fit parameters: evaluate it once
  std::vector<std::complex<double>> n_rb(n);
  for (std::size_t i = 0; i < n; ++i) {
    n_rb[i] = vapor::refractive_index(x[i], vapor_state, line);
  }

  const ResidualFn residuals = [&](std::span<const double> p, std::span<double> out) {
    const double interaction_factor = p[0];
    const double scale = fit_scale ? p[1] : 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double model =
          std::norm(cavity::transfer_function(x[i], ring, n_rb[i], interaction_factor));
      out[i] = scale * model - y[i];
    }
  };

  std::vector<double> initial{0.5};
  std::vector<std::string> names{"interaction_factor"};
  std::vector<double> bounds{0.0};
  if (fit_scale) {
    initial.push_back(1.0);
    names.push_back("scale");
    bounds.push_back(1e-6);
  }
  return levenberg_marquardt(residuals, static_cast<int>(n), initial, names, bounds);
}

FitResult fit_saturation(std::span<const saturation::SaturationPoint> points) {
  if (points.size() < 4) throw ValidationError("fit_saturation: need at least 4 points");
  double p_min = std::numeric_limits<double>::infinity(), p_max = 0.0;
  for (const auto& point : points) {
    if (!(point.power_w > 0)) throw DataError("fit_saturation: powers must be positive");
    if (!(point.sigma > 0)) throw DataError("fit_saturation: uncertainties must be positive");
    p_min = std::min(p_min, point.power_w);
    p_max = std::max(p_max, point.power_w);
  }
  if (p_max < 5.0 * p_min) {
    throw ValidationError("fit_saturation: powers must span at least a factor of 5");
  }

  double alpha_max = 0.0;
  std::vector<double> powers_sorted;
  for (const auto& point : points) {
    alpha_max = std::max(alpha_max, point.alpha);
    powers_sorted.push_back(point.power_w);
  }
  std::sort(powers_sorted.begin(), powers_sorted.end());
  const double p_sat0 = powers_sorted[powers_sorted.size() / 2];
  const double alpha00 = alpha_max > 0 ? alpha_max : 1.0;

  const ResidualFn residuals = [&, points](std::span<const double> p, std::span<double> out) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double model = p[0] / (1.0 + points[i].power_w / p[1]);
      out[i] = (model - points[i].alpha) / points[i].sigma;
    }
  };

  FitResult result = levenberg_marquardt(residuals, static_cast<int>(points.size()),
                                         {alpha00, p_sat0}, {"alpha0", "p_sat_w"},
                                         {0.0, 1e-6 * p_min});
  // degenerate design: the data never probes the turnover
  if (p_max < 0.2 * result.value("p_sat_w")) result.ill_conditioned = true;
  return result;
}

}  // namespace acmrr::fitting
