// qndtomo: quantum-nondemolition signal/meter coupling and homodyne tomography.
// SPDX-License-Identifier: MIT
#include "states.hpp"

#include <algorithm>
#include <cmath>

namespace qndtomo {
namespace {

constexpr double kQuarticRootPi = 0.75112554446494248;  // pi^{1/4}

// Envelope checks shared by the Gaussian-like constructors: the grid step
// must resolve the density's standard deviation and the state (plus 6 sigma
// of tail) must fit between the grid edges, or moments silently distort.
void check_envelope(const QuadratureGrid& grid, double mean, double sigma) {
  if (grid.dx() > 0.7 * sigma) {
    fail(ErrorCode::grid_resolution,
         "state constructor: grid step too coarse for this state's width");
  }
  if (mean - 6.0 * sigma < grid.x_min || mean + 6.0 * sigma > grid.x_max) {
    fail(ErrorCode::support_overflow,
         "state constructor: state tail extends past the grid edge");
  }
}

// Phase factors e^{i q x} (ramps) and e^{i b x^2} (chirps) must stay below
// the grid Nyquist frequency; the 0.8 factor leaves headroom for the
// envelope's own bandwidth.
void check_phase_bandwidth(const QuadratureGrid& grid, double max_frequency) {
  if (max_frequency > 0.8 * kPi / grid.dx()) {
    fail(ErrorCode::grid_resolution,
         "state constructor: phase oscillates beyond the grid Nyquist rate");
  }
}

}  // namespace

Wavefunction make_vacuum(const QuadratureGrid& grid, double angle) {
  return make_coherent(grid, angle, 0.0, 0.0);
}

Wavefunction make_coherent(const QuadratureGrid& grid, double angle, double x0,
                           double p0) {
  grid.validate();
  const double sigma = 1.0 / std::sqrt(2.0);
  check_envelope(grid, x0, sigma);
  check_phase_bandwidth(grid, std::abs(p0));

  Wavefunction psi;
  psi.grid = grid;
  psi.angle = wrap_angle(angle);
  psi.amp.resize(static_cast<std::size_t>(grid.n_points));
  for (int i = 0; i < grid.n_points; ++i) {
    const double x = grid.x(i);
    const double d = x - x0;
    psi.amp[static_cast<std::size_t>(i)] =
        std::exp(complex{-0.5 * d * d, p0 * (x - 0.5 * x0)}) / kQuarticRootPi;
  }
  psi.normalize();
  return psi;
}

Wavefunction make_fock(const QuadratureGrid& grid, double angle, int n) {
  grid.validate();
  if (n < 0) fail(ErrorCode::invalid_argument, "make_fock: n must be >= 0");
  const double radius = std::sqrt(2.0 * n + 1.0);  // classical turning point
  const double edge = std::min(-grid.x_min, grid.x_max);
  if (edge < 1.2 * radius + 2.0) {
    fail(ErrorCode::support_overflow,
         "make_fock: grid too small for this excitation number");
  }
  if (grid.dx() > kPi / (2.5 * radius)) {
    fail(ErrorCode::grid_resolution,
         "make_fock: grid step too coarse for this excitation number");
  }

  Wavefunction psi;
  psi.grid = grid;
  psi.angle = wrap_angle(angle);
  psi.amp.resize(static_cast<std::size_t>(grid.n_points));
  const complex phase = std::exp(complex{0.0, -angle * n});
  for (int i = 0; i < grid.n_points; ++i) {
    const double x = grid.x(i);
    double prev = 0.0;
    double cur = std::exp(-0.5 * x * x) / kQuarticRootPi;
    for (int m = 0; m < n; ++m) {
      const double next = std::sqrt(2.0 / (m + 1)) * x * cur -
                          std::sqrt(static_cast<double>(m) / (m + 1)) * prev;
      prev = cur;
      cur = next;
    }
    psi.amp[static_cast<std::size_t>(i)] = phase * cur;
  }
  psi.normalize();
  return psi;
}

Wavefunction make_squeezed_vacuum(const QuadratureGrid& grid, double angle,
                                  const SqueezeSpec& squeeze) {
  grid.validate();
  if (!(squeeze.r >= 0.0) || squeeze.r > 25.0) {
    fail(ErrorCode::invalid_argument,
         "make_squeezed_vacuum: r must lie in [0, 25]");
  }
  const double u = squeeze.phase - 2.0 * angle;
  const double c = std::cosh(squeeze.r);
  const double s = std::sinh(squeeze.r);
  const complex eiu = std::exp(complex{0.0, u});
  const complex B = c - s * eiu;
  const complex A = (c + s * eiu) / B;

  const double sigma = std::sqrt(0.5 * std::norm(B));
  check_envelope(grid, 0.0, sigma);
  const double xmax = std::max(-grid.x_min, grid.x_max);
  check_phase_bandwidth(grid, std::abs(A.imag()) * xmax);

  Wavefunction psi;
  psi.grid = grid;
  psi.angle = wrap_angle(angle);
  psi.amp.resize(static_cast<std::size_t>(grid.n_points));
  const complex pref = (1.0 / kQuarticRootPi) / std::sqrt(B);
  for (int i = 0; i < grid.n_points; ++i) {
    const double x = grid.x(i);
    psi.amp[static_cast<std::size_t>(i)] = pref * std::exp(-0.5 * A * x * x);
  }
  psi.normalize();
  return psi;
}

Wavefunction make_even_cat(const QuadratureGrid& grid, double angle,
                           double x0) {
  grid.validate();
  if (!(x0 > 0.0)) {
    fail(ErrorCode::invalid_argument, "make_even_cat: x0 must be positive");
  }
  const double sigma = 1.0 / std::sqrt(2.0);
  check_envelope(grid, x0, sigma);
  check_envelope(grid, -x0, sigma);

  Wavefunction psi;
  psi.grid = grid;
  psi.angle = wrap_angle(angle);
  psi.amp.resize(static_cast<std::size_t>(grid.n_points));
  for (int i = 0; i < grid.n_points; ++i) {
    const double x = grid.x(i);
    const double dp = x - x0;
    const double dm = x + x0;
    psi.amp[static_cast<std::size_t>(i)] =
        (std::exp(-0.5 * dp * dp) + std::exp(-0.5 * dm * dm)) /
        kQuarticRootPi;
  }
  psi.normalize();
  return psi;
}

}  // namespace qndtomo
