#include "acmrr/lindblad.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <string>

#include "acmrr/errors.hpp"

namespace acmrr::cqed {

namespace {

using cd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

Matrix annihilation(int fock_dim) {
  Matrix a = Matrix::Zero(fock_dim, fock_dim);
  for (int n = 1; n < fock_dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Matrix kron(const Matrix& lhs, const Matrix& rhs) {
  Matrix out(lhs.rows() * rhs.rows(), lhs.cols() * rhs.cols());
  for (int i = 0; i < lhs.rows(); ++i) {
    for (int j = 0; j < lhs.cols(); ++j) {
      out.block(i * rhs.rows(), j * rhs.cols(), rhs.rows(), rhs.cols()) = lhs(i, j) * rhs;
    }
  }
  return out;
}

// Superoperator pieces mapped onto column-stacked density matrices:
// vec(A rho B) = (B^T (x) A) vec(rho).
Matrix left_mul(const Matrix& op, int dim) {
  return kron(Matrix::Identity(dim, dim), op);
}
Matrix right_mul(const Matrix& op, int dim) {
  return kron(op.transpose(), Matrix::Identity(dim, dim));
}

// D[c] with rate: rate * (2 c rho c^dag - c^dag c rho - rho c^dag c)
Matrix dissipator(const Matrix& c, double rate, int dim) {
  const Matrix cdc = c.adjoint() * c;
  return rate * (2.0 * kron(c.conjugate(), c) - left_mul(cdc, dim) - right_mul(cdc, dim));
}

struct SingleSolve {
  double photon_number;
  double transmission;
};

SingleSolve solve_at_truncation(const LindbladParams& p, int fock_dim) {
  const int atom_dim = 1 << p.n_atoms;
  const int dim = fock_dim * atom_dim;

  const Matrix identity_atoms = Matrix::Identity(atom_dim, atom_dim);
  const Matrix a = kron(annihilation(fock_dim), identity_atoms);

  Matrix sigma_minus_single(2, 2);
  sigma_minus_single << 0, 1, 0, 0;  // |g><e|
  std::array<Matrix, 2> sm;
  for (int j = 0; j < p.n_atoms; ++j) {
    Matrix op = Matrix::Identity(1, 1);
    for (int k = 0; k < p.n_atoms; ++k) {
      op = kron(op, k == j ? sigma_minus_single : Matrix::Identity(2, 2));
    }
    sm[static_cast<std::size_t>(j)] = kron(Matrix::Identity(fock_dim, fock_dim), op);
  }

  const double kappa_ext = p.kappa_ext_hz < 0 ? 0.5 * p.kappa_hz : p.kappa_ext_hz;

  // rotating frame of the drive
  const double cavity_detuning = -p.drive_detuning_hz;  // cavity at the atomic reference
  Matrix hamiltonian = cavity_detuning * (a.adjoint() * a).eval();
  for (int j = 0; j < p.n_atoms; ++j) {
    const auto& s = sm[static_cast<std::size_t>(j)];
    hamiltonian += (p.atom_detuning_hz[static_cast<std::size_t>(j)] - p.drive_detuning_hz) *
                   (s.adjoint() * s).eval();
    hamiltonian += p.coupling_hz[static_cast<std::size_t>(j)] *
                   (a.adjoint() * s + a * s.adjoint()).eval();
  }
  hamiltonian += cd(0.0, 1.0) * p.drive_amplitude * (a.adjoint() - a).eval();

  Matrix liouvillian =
      cd(0.0, -1.0) * (left_mul(hamiltonian, dim) - right_mul(hamiltonian, dim));
  liouvillian += dissipator(a, p.kappa_hz, dim);
  const double gamma_phi = p.gamma_hz - 0.5 * p.natural_linewidth_hz;
  for (int j = 0; j < p.n_atoms; ++j) {
    const auto& s = sm[static_cast<std::size_t>(j)];
    liouvillian += dissipator(s, 0.5 * p.natural_linewidth_hz, dim);
    liouvillian += dissipator((s.adjoint() * s).eval(), gamma_phi, dim);
  }

  // L rho = 0 with tr(rho) = 1: replace one row with the trace functional.
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(dim * dim);
  Eigen::RowVectorXcd trace_row = Eigen::RowVectorXcd::Zero(dim * dim);
  for (int i = 0; i < dim; ++i) trace_row(i * dim + i) = 1.0;
  liouvillian.row(0) = trace_row;
  rhs(0) = 1.0;

  const Eigen::VectorXcd rho_vec = liouvillian.partialPivLu().solve(rhs);
  Eigen::Map<const Matrix> rho(rho_vec.data(), dim, dim);

  SingleSolve out;
  out.photon_number = std::real((a.adjoint() * a * rho).trace());
  const cd a_expect = (a * rho).trace();
  if (p.drive_amplitude == 0.0) {
    out.transmission = 1.0;  // no input field; transmission is undefined, report unity
  } else {
    const cd a_in = p.drive_amplitude / std::sqrt(2.0 * kappa_ext);
    out.transmission = std::norm(1.0 - std::sqrt(2.0 * kappa_ext) * a_expect / a_in);
  }
  return out;
}

double relative_difference(double x, double y) {
  const double scale = std::max({std::fabs(x), std::fabs(y), 1e-12});
  return std::fabs(x - y) / scale;
}

}  // namespace

void LindbladParams::validate() const {
  if (n_atoms < 0 || n_atoms > 2) {
    throw ValidationError("lindblad: n_atoms must be 0, 1 or 2");
  }
  if (photon_truncation < 3) {
    throw ValidationError("lindblad: photon truncation must be >= 3");
  }
  if (!(kappa_hz > 0)) throw ValidationError("lindblad: kappa must be positive");
  if (!(gamma_hz > 0)) throw ValidationError("lindblad: gamma must be positive");
  if (!(natural_linewidth_hz > 0)) {
    // the population decay channel also keeps the steady state unique
    throw ValidationError("lindblad: natural linewidth must be positive");
  }
  if (gamma_hz < 0.5 * natural_linewidth_hz) {
    throw ValidationError("lindblad: gamma must be at least half the natural linewidth");
  }
  if (kappa_ext_hz >= 0 && kappa_ext_hz > kappa_hz) {
    throw ValidationError("lindblad: kappa_ext cannot exceed kappa");
  }
}

LindbladResult lindblad_steady_state(const LindbladParams& params) {
  params.validate();
  const SingleSolve coarse = solve_at_truncation(params, params.photon_truncation);
  const SingleSolve fine = solve_at_truncation(params, params.photon_truncation + 2);

  const double dn = relative_difference(coarse.photon_number, fine.photon_number);
  const double dt = relative_difference(coarse.transmission, fine.transmission);
  if (std::max(dn, dt) > 1e-3) {
    throw AccuracyError(
        "lindblad: steady state not converged at photon truncation " +
        std::to_string(params.photon_truncation) + " (relative change " +
        std::to_string(std::max(dn, dt)) + " at truncation + 2); increase the truncation");
  }
  return {fine.photon_number, fine.transmission};
}

}  // namespace acmrr::cqed
