// qndtomo: quantum-nondemolition signal/meter coupling and homodyne tomography.
// SPDX-License-Identifier: MIT
#include "fock.hpp"

#include <cmath>

namespace qndtomo::fock {
namespace {

void check_dim(int dim) {
  if (dim < 2 || dim > 4096) {
    fail(ErrorCode::invalid_argument, "fock: dimension out of range");
  }
}

// Hermite functions phi_n(x) for n = 0..n_max as columns of a matrix,
// rows indexed by grid point.
Eigen::MatrixXd hermite_table(const QuadratureGrid& grid, int n_max) {
  Eigen::MatrixXd phi(grid.n_points, n_max + 1);
  const double norm0 = std::pow(kPi, -0.25);
  for (int i = 0; i < grid.n_points; ++i) {
    const double x = grid.x(i);
    phi(i, 0) = norm0 * std::exp(-0.5 * x * x);
    if (n_max >= 1) phi(i, 1) = std::sqrt(2.0) * x * phi(i, 0);
    for (int n = 1; n < n_max; ++n) {
      phi(i, n + 1) = std::sqrt(2.0 / (n + 1)) * x * phi(i, n) -
                      std::sqrt(static_cast<double>(n) / (n + 1)) * phi(i, n - 1);
    }
  }
  return phi;
}

}  // namespace

Matrix annihilation(int dim) {
  check_dim(dim);
  Matrix a = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

Matrix quadrature(int dim, double theta) {
  const Matrix a = annihilation(dim);
  const complex ph = std::exp(complex{0.0, -theta}) / std::sqrt(2.0);
  return ph * a + std::conj(ph) * a.adjoint();
}

Matrix hermitian_evolution(const Matrix& H, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(H);
  if (es.info() != Eigen::Success) {
    fail(ErrorCode::internal, "hermitian_evolution: eigensolver failed");
  }
  const Eigen::VectorXd& lam = es.eigenvalues();
  Vector phase(lam.size());
  for (int i = 0; i < lam.size(); ++i) {
    phase(i) = std::exp(complex{0.0, -lam(i) * t});
  }
  return es.eigenvectors() * phase.asDiagonal() *
         es.eigenvectors().adjoint();
}

Matrix displacement(int dim, complex alpha) {
  // alpha a^dag - conj(alpha) a is anti-Hermitian; i times it is Hermitian.
  const Matrix a = annihilation(dim);
  const Matrix K = alpha * a.adjoint() - std::conj(alpha) * a;
  return hermitian_evolution(kI * K, 1.0);
}

Matrix squeeze(int dim, double r, double phase) {
  const Matrix a = annihilation(dim);
  const Matrix a2 = a * a;
  const Matrix K = 0.5 * r *
                   (std::exp(complex{0.0, -phase}) * a2 -
                    std::exp(complex{0.0, phase}) * a2.adjoint());
  return hermitian_evolution(kI * K, 1.0);
}

Vector vacuum_state(int dim) { return fock_state(dim, 0); }

Vector fock_state(int dim, int n) {
  check_dim(dim);
  if (n < 0 || n >= dim) {
    fail(ErrorCode::invalid_argument, "fock_state: level outside truncation");
  }
  Vector v = Vector::Zero(dim);
  v(n) = 1.0;
  return v;
}

Vector coherent_state(int dim, complex alpha) {
  return displacement(dim, alpha) * vacuum_state(dim);
}

Vector squeezed_state(int dim, double r, double phase) {
  return squeeze(dim, r, phase) * vacuum_state(dim);
}

double truncation_leakage(const Vector& state, int levels) {
  const int dim = static_cast<int>(state.size());
  const int from = std::max(0, dim - levels);
  double s = 0.0;
  for (int n = from; n < dim; ++n) s += std::norm(state(n));
  return s;
}

Wavefunction project_to_grid(const Vector& state, const QuadratureGrid& grid,
                             double theta) {
  grid.validate();
  const int dim = static_cast<int>(state.size());
  const Eigen::MatrixXd phi = hermite_table(grid, dim - 1);
  Vector rotated(dim);
  for (int n = 0; n < dim; ++n) {
    rotated(n) = state(n) * std::exp(complex{0.0, -theta * n});
  }
  Vector amp = phi.cast<complex>() * rotated;
  Wavefunction psi;
  psi.grid = grid;
  psi.angle = wrap_angle(theta);
  psi.amp.assign(amp.data(), amp.data() + amp.size());
  return psi;
}

BipartiteFock qnd_evolution(const Vector& signal, const Vector& meter,
                            double kappa, double angle_s, double angle_m) {
  const int ds = static_cast<int>(signal.size());
  const int dm = static_cast<int>(meter.size());
  Eigen::SelfAdjointEigenSolver<Matrix> es_s(quadrature(ds, angle_s));
  Eigen::SelfAdjointEigenSolver<Matrix> es_m(quadrature(dm, angle_m));
  if (es_s.info() != Eigen::Success || es_m.info() != Eigen::Success) {
    fail(ErrorCode::internal, "qnd_evolution: eigensolver failed");
  }
  const Matrix& Qs = es_s.eigenvectors();
  const Matrix& Qm = es_m.eigenvectors();

  // Product state in the joint quadrature eigenbasis, where the coupling is
  // diagonal with eigenvalues kappa * lambda_i * mu_j.
  Matrix C = signal * meter.transpose();
  Matrix Ct = Qs.adjoint() * C * Qm.conjugate();
  for (int i = 0; i < ds; ++i) {
    for (int j = 0; j < dm; ++j) {
      Ct(i, j) *= std::exp(
          complex{0.0, -kappa * es_s.eigenvalues()(i) * es_m.eigenvalues()(j)});
    }
  }
  BipartiteFock out;
  out.coeff = Qs * Ct * Qm.transpose();
  return out;
}

Matrix reduced_signal(const BipartiteFock& state) {
  return state.coeff * state.coeff.adjoint();
}

Matrix reduced_meter(const BipartiteFock& state) {
  return state.coeff.transpose() * state.coeff.conjugate();
}

double quadrature_mean(const Matrix& rho, double theta) {
  const Matrix X = quadrature(static_cast<int>(rho.rows()), theta);
  return (rho * X).trace().real();
}

double quadrature_variance(const Matrix& rho, double theta) {
  const Matrix X = quadrature(static_cast<int>(rho.rows()), theta);
  const double m1 = (rho * X).trace().real();
  const double m2 = (rho * X * X).trace().real();
  return m2 - m1 * m1;
}

double truncation_leakage(const BipartiteFock& state, int levels) {
  const int ds = static_cast<int>(state.coeff.rows());
  const int dm = static_cast<int>(state.coeff.cols());
  double s = 0.0;
  for (int n = 0; n < ds; ++n) {
    for (int m = 0; m < dm; ++m) {
      if (n >= ds - levels || m >= dm - levels) s += std::norm(state.coeff(n, m));
    }
  }
  return s;
}

Matrix project_joint(const BipartiteFock& state, const QuadratureGrid& gs,
                     double theta_s, const QuadratureGrid& gm,
                     double theta_m) {
  gs.validate();
  gm.validate();
  const int ds = static_cast<int>(state.coeff.rows());
  const int dm = static_cast<int>(state.coeff.cols());
  const Matrix phi_s = hermite_table(gs, ds - 1).cast<complex>();
  const Matrix phi_m = hermite_table(gm, dm - 1).cast<complex>();
  Vector ph_s(ds), ph_m(dm);
  for (int n = 0; n < ds; ++n) ph_s(n) = std::exp(complex{0.0, -theta_s * n});
  for (int m = 0; m < dm; ++m) ph_m(m) = std::exp(complex{0.0, -theta_m * m});
  const Matrix rotated =
      ph_s.asDiagonal() * state.coeff * ph_m.asDiagonal();
  return phi_s * rotated * phi_m.transpose();
}

double kick_factorization_residual(int dim, double beta, double theta,
                                   double theta_ref) {
  const double delta = theta - theta_ref;
  const Matrix lhs = hermitian_evolution(quadrature(dim, theta), beta);
  const complex phase =
      std::exp(complex{0.0, 0.25 * beta * beta * std::sin(2.0 * delta)});
  const Matrix rhs =
      phase *
      (hermitian_evolution(quadrature(dim, theta_ref),
                           beta * std::cos(delta)) *
       hermitian_evolution(quadrature(dim, theta_ref + 0.5 * kPi),
                           beta * std::sin(delta)));
  const int block = dim / 2;
  return (lhs.topLeftCorner(block, block) - rhs.topLeftCorner(block, block))
      .cwiseAbs()
      .maxCoeff();
}

double displaced_probe_residual(int dim, double beta, double theta,
                                double theta_ref, double r_probe) {
  const double delta = theta - theta_ref;
  const Vector probe = squeezed_state(dim, r_probe, 2.0 * theta_ref);
  const Vector lhs =
      hermitian_evolution(quadrature(dim, theta), beta) * probe;
  const complex phase =
      std::exp(complex{0.0, 0.25 * beta * beta * std::sin(2.0 * delta)});
  const complex alpha = beta * std::sin(delta) *
                        std::exp(complex{0.0, theta_ref}) / std::sqrt(2.0);
  const Vector rhs = phase * (hermitian_evolution(quadrature(dim, theta_ref),
                                                  beta * std::cos(delta)) *
                              (displacement(dim, alpha) * probe));
  return (lhs - rhs).norm();
}

double localized_kick_residual(int dim, double beta, double theta,
                               double theta_ref, double x0, double r_probe) {
  const double delta = theta - theta_ref;
  const complex frame = std::exp(complex{0.0, theta_ref});
  const Vector squeezed = squeezed_state(dim, r_probe, 2.0 * theta_ref);
  const Vector probe =
      displacement(dim, x0 * frame / std::sqrt(2.0)) * squeezed;
  const Vector lhs =
      hermitian_evolution(quadrature(dim, theta), beta) * probe;

  const complex mu = frame *
                     complex{x0 + beta * std::sin(delta),
                             -beta * std::cos(delta)} /
                     std::sqrt(2.0);
  const complex phase =
      std::exp(complex{0.0, -0.5 * beta * x0 * std::cos(delta)});
  const Vector rhs = phase * (displacement(dim, mu) * squeezed);
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

}  // namespace qndtomo::fock
