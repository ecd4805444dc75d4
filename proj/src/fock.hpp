// qndtomo: quantum-nondemolition signal/meter coupling and homodyne tomography.
// SPDX-License-Identifier: MIT
#pragma once

#include <Eigen/Dense>

#include "grid.hpp"

// Truncated number-basis (Fock) oracle. Everything here is built from the
// ladder-operator matrix and exact eigendecomposition exponentials, with no
// grids involved, so it provides an independent cross-check of the
// grid-based machinery. All generators used are quadratic in the ladder
// operators, hence Hermitian (or i*anti-Hermitian) and exactly
// exponentiable within the truncated space.
namespace qndtomo::fock {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Ladder operator a with a|n> = sqrt(n)|n-1>, dimension dim.
Matrix annihilation(int dim);

// Rotated quadrature X(theta) = (a e^{-i theta} + a^dag e^{i theta})/sqrt(2).
Matrix quadrature(int dim, double theta);

// exp(-i H t) for Hermitian H, via eigendecomposition.
Matrix hermitian_evolution(const Matrix& H, double t);

// Glauber displacement D(alpha) = exp(alpha a^dag - conj(alpha) a).
Matrix displacement(int dim, complex alpha);

// Squeeze S(r, phase) = exp((r/2)(e^{-i phase} a^2 - e^{i phase} a^dag^2));
// the quadrature X(phase/2) ends up with variance e^{-2r}/2.
Matrix squeeze(int dim, double r, double phase);

Vector vacuum_state(int dim);
Vector fock_state(int dim, int n);
Vector coherent_state(int dim, complex alpha);
Vector squeezed_state(int dim, double r, double phase);

// Population in the top `levels` occupation numbers: a cheap monitor that a
// state still fits the truncation.
double truncation_leakage(const Vector& state, int levels = 8);

// psi(x_i) = sum_n c_n e^{-i n theta} phi_n(x_i): the wavefunction of the
// number-basis state in the rotated quadrature representation.
Wavefunction project_to_grid(const Vector& state, const QuadratureGrid& grid,
                             double theta);

// Two-mode state |Psi> = sum_{n,m} coeff(n,m) |n>_signal |m>_meter.
struct BipartiteFock {
  Matrix coeff;
};

// exp(-i kappa X_s(angle_s) (x) X_m(angle_m)) applied to a product state,
// evaluated in the product eigenbasis of the two quadratures (exact in the
// truncated space).
BipartiteFock qnd_evolution(const Vector& signal, const Vector& meter,
                            double kappa, double angle_s, double angle_m);

// Reduced density matrices rho(n, n').
Matrix reduced_signal(const BipartiteFock& state);
Matrix reduced_meter(const BipartiteFock& state);

double quadrature_mean(const Matrix& rho, double theta);
double quadrature_variance(const Matrix& rho, double theta);

// Population of the top `levels` levels in either mode of a bipartite state.
double truncation_leakage(const BipartiteFock& state, int levels = 8);

// Joint amplitude Psi(x_i, y_j) on a pair of grids, signal representation
// angle theta_s and meter angle theta_m. Row i = signal point, column j =
// meter point.
Matrix project_joint(const BipartiteFock& state, const QuadratureGrid& gs,
                     double theta_s, const QuadratureGrid& gm, double theta_m);

// --- Operator identities used by the "check" scenario -----------------------

// Relative residual of exp(-i beta X(theta)) against its exact three-factor
// splitting in the frame theta_ref (delta = theta - theta_ref):
//   e^{i (beta^2/4) sin 2 delta}
//     * exp(-i beta cos(delta) X(theta_ref))
//     * exp(-i beta sin(delta) X(theta_ref + pi/2)),
// measured on the interior matrix block (indices < dim/2) where truncation
// effects are negligible.
double kick_factorization_residual(int dim, double beta, double theta,
                                   double theta_ref);

// Norm residual of the same identity applied to a squeezed probe aligned
// with theta_ref, with the translation factor realized as a displacement:
//   exp(-i beta X(theta)) S |0>  vs
//   e^{i (beta^2/4) sin 2 delta} exp(-i beta cos(delta) X(theta_ref))
//     * D(beta sin(delta) e^{i theta_ref}/sqrt(2)) S |0>.
double displaced_probe_residual(int dim, double beta, double theta,
                                double theta_ref, double r_probe);

// Norm residual of the kick acting on a probe localized at position x0 of
// the theta_ref frame (squeezed vacuum displaced along X(theta_ref), width
// e^{-r_probe}/sqrt(2)). The exact closed form follows from composing two
// displacements:
//   exp(-i beta X(theta)) D(x0 e^{i theta_ref}/sqrt(2)) S |0>  vs
//   e^{-i beta x0 cos(delta)/2}
//     D(e^{i theta_ref} [(x0 + beta sin delta) - i beta cos delta]/sqrt(2))
//     S |0>,   delta = theta - theta_ref:
// the monitored position shifts by beta sin(delta), the conjugate momentum
// is kicked by -beta cos(delta), and the phase is linear in x0. In the
// narrow-probe limit this is the eigenstate shift-plus-phase rule that the
// joint coupling amplitude is built from.
double localized_kick_residual(int dim, double beta, double theta,
                               double theta_ref, double x0, double r_probe);

}  // namespace qndtomo::fock
