// qndtomo: quantum-nondemolition signal/meter coupling and homodyne tomography.
// SPDX-License-Identifier: MIT
#pragma once

#include "grid.hpp"

namespace qndtomo {

// All constructors sample an analytic wavefunction on the grid in the
// representation labelled by `angle`, validate that the grid resolves and
// contains the state (ErrorCode::grid_resolution / support_overflow
// otherwise), and renormalize so the discrete norm is exactly 1.
//
// Parameters with a direction (displacements, squeezing axes in the cat
// constructor) are interpreted in the frame of the requested representation.

// Ground state: psi(x) = pi^{-1/4} e^{-x^2/2}, variance 1/2 at every angle.
Wavefunction make_vacuum(const QuadratureGrid& grid, double angle);

// Displaced vacuum with mean quadrature x0 and mean conjugate quadrature p0
// (both in the representation frame):
//   psi(x) = pi^{-1/4} exp(-(x-x0)^2/2 + i p0 x - i p0 x0 / 2).
Wavefunction make_coherent(const QuadratureGrid& grid, double angle, double x0,
                           double p0);

// Number state n: psi(x) = e^{-i n angle} phi_n(x) with the Hermite-function
// recurrence phi_{n+1} = sqrt(2/(n+1)) x phi_n - sqrt(n/(n+1)) phi_{n-1}.
// The e^{-i n angle} factor keeps the constructor consistent with
// rotate_representation (both describe the same ket).
Wavefunction make_fock(const QuadratureGrid& grid, double angle, int n);

struct SqueezeSpec {
  double r = 0.0;      // squeezing magnitude, r >= 0
  double phase = 0.0;  // axis phase; the quadrature x(phase/2) has the
                       // reduced variance e^{-2r}/2
};

// Squeezed vacuum. Measured along x(theta) the variance is
//   V(theta) = [cosh(2r) - sinh(2r) cos(phase - 2 theta)] / 2.
// Sampled form at representation angle theta with u = phase - 2 theta:
//   psi(x) = pi^{-1/4} B^{-1/2} exp(-A x^2 / 2),
//   B = cosh r - sinh r e^{iu},  A = (cosh r + sinh r e^{iu}) / B,
// principal square root (Re B >= cosh r - sinh r > 0).
Wavefunction make_squeezed_vacuum(const QuadratureGrid& grid, double angle,
                                  const SqueezeSpec& squeeze);

// Even superposition of two coherent states displaced to +-x0 along the
// representation axis (x0 = sqrt(2)*alpha for real coherent amplitude alpha):
//   psi(x) ~ exp(-(x-x0)^2/2) + exp(-(x+x0)^2/2).
Wavefunction make_even_cat(const QuadratureGrid& grid, double angle,
                           double x0);

}  // namespace qndtomo
