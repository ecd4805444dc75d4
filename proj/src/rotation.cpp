// qndtomo: quantum-nondemolition signal/meter coupling and homodyne tomography.
// SPDX-License-Identifier: MIT
#include "rotation.hpp"

#include <algorithm>
#include <cmath>

#include "fft_util.hpp"

namespace qndtomo {
namespace {

constexpr double kAngleTol = 1e-12;
// Below this |sin(delta)| the chirp factors oscillate too fast on any
// reasonable grid; the rotation is composed from two milder steps instead.
constexpr double kComposeThreshold = 0.3;

// Worst-case instantaneous frequency of the chirped integrand must stay
// below the grid Nyquist pi/dx with headroom for the state's own bandwidth.
bool step_fits_grid(const QuadratureGrid& g, double delta) {
  const double s = std::sin(delta);
  const double span = g.x_max - g.x_min;
  const double xmax = std::max(std::abs(g.x_min), std::abs(g.x_max));
  const double chirp_freq =
      std::abs(1.0 / s) * span + std::abs(std::tan(0.5 * delta)) * xmax;
  return chirp_freq <= 0.8 * kPi / g.dx();
}

// One chirp-convolution-chirp stage for the kernel
//   K(x,y) = C * exp(-i*tan(d/2)*x^2/2) exp(i*csc(d)*(x-y)^2/2)
//              * exp(-i*tan(d/2)*y^2/2),
//   C = e^{i*d/2} (2*pi*|sin d|)^{-1/2} e^{-i*(pi/4)*sgn(sin d)},
// discretized as out_j = C * dx * sum_k K-parts, a Toeplitz sum in j-k.
cvector frft_step(const QuadratureGrid& g, const cvector& amp, double delta) {
  const std::size_t n = amp.size();
  const double dx = g.dx();
  const double s = std::sin(delta);
  const double csc = 1.0 / s;
  const double tn = std::tan(0.5 * delta);

  cvector chirped(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double xk = g.x(static_cast<int>(k));
    chirped[k] = amp[k] * std::exp(complex{0.0, -0.5 * tn * xk * xk});
  }
  // kernel[j] = exp(i*csc*((j-(n-1))*dx)^2/2), offsets -(n-1)..(n-1).
  cvector kernel(2 * n - 1);
  for (std::size_t j = 0; j < kernel.size(); ++j) {
    const double u =
        (static_cast<double>(j) - static_cast<double>(n - 1)) * dx;
    kernel[j] = std::exp(complex{0.0, 0.5 * csc * u * u});
  }
  cvector conv = fftu::linear_convolution(chirped, kernel);

  const double sign = (s > 0.0) ? 1.0 : -1.0;
  const complex constant = std::exp(complex{0.0, 0.5 * delta}) *
                           std::exp(complex{0.0, -sign * 0.25 * kPi}) /
                           std::sqrt(kTwoPi * std::abs(s));
  cvector out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double xj = g.x(static_cast<int>(j));
    out[j] = constant * dx * std::exp(complex{0.0, -0.5 * tn * xj * xj}) *
             conv[j + n - 1];
  }
  return out;
}

}  // namespace

Wavefunction rotate_representation(const Wavefunction& psi, double new_angle) {
  psi.grid.validate();
  if (psi.amp.size() != static_cast<std::size_t>(psi.grid.n_points)) {
    fail(ErrorCode::invalid_argument,
         "rotate_representation: amplitude/grid size mismatch");
  }

  const double delta = wrap_symmetric(new_angle - psi.angle);
  Wavefunction out;
  out.grid = psi.grid;
  out.angle = wrap_angle(new_angle);

  // A no-op rotation is a plain relabelling and works on any grid.
  if (std::abs(delta) < kAngleTol) {
    out.amp = psi.amp;
    return out;
  }
  if (!psi.grid.is_symmetric()) {
    fail(ErrorCode::invalid_argument,
         "rotate_representation: grid must be symmetric about 0");
  }
  if (std::min(std::abs(delta - kPi), std::abs(delta + kPi)) < kAngleTol) {
    // Rotation by pi multiplies Fock amplitudes by (-1)^n: the parity flip.
    out.amp.assign(psi.amp.rbegin(), psi.amp.rend());
    return out;
  }

  const bool compose = std::abs(std::sin(delta)) < kComposeThreshold ||
                       !step_fits_grid(psi.grid, delta);
  if (!compose) {
    out.amp = frft_step(psi.grid, psi.amp, delta);
    return out;
  }

  const double half = (delta > 0.0) ? 0.5 * kPi : -0.5 * kPi;
  const double rest = delta - half;
  if (!step_fits_grid(psi.grid, half) || !step_fits_grid(psi.grid, rest)) {
    fail(ErrorCode::grid_resolution,
         "rotate_representation: grid too coarse for this rotation angle");
  }
  out.amp = frft_step(psi.grid, frft_step(psi.grid, psi.amp, half), rest);
  return out;
}

}  // namespace qndtomo
