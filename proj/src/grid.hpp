// qndtomo: quantum-nondemolition signal/meter coupling and homodyne tomography.
// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <cstdint>

#include "common.hpp"

namespace qndtomo {

// Uniform quadrature grid x_i = x_min + i*dx, i = 0..n_points-1, with
// x_{n_points-1} == x_max. All integrals use the rectangle rule sum*dx.
struct QuadratureGrid {
  double x_min = -8.0;
  double x_max = 8.0;
  int n_points = 512;

  double dx() const { return (x_max - x_min) / (n_points - 1); }
  double x(int i) const { return x_min + i * dx(); }
  rvector points() const;

  bool operator==(const QuadratureGrid& o) const {
    return x_min == o.x_min && x_max == o.x_max && n_points == o.n_points;
  }

  // Symmetric about 0 (required by representation rotation and parity).
  bool is_symmetric(double tol = 1e-9) const;

  // Throws ErrorCode::invalid_argument when malformed.
  void validate() const;
};

// Single-mode pure state sampled on a quadrature grid. `angle` records which
// rotated quadrature the samples refer to; amp[i] is the wavefunction value
// at grid.x(i) in that representation. Physical states keep sum|amp|^2*dx==1.
struct Wavefunction {
  QuadratureGrid grid;
  double angle = 0.0;
  cvector amp;

  double norm_squared() const;
  // Rescales to unit norm; throws ErrorCode::internal when the norm is ~0.
  void normalize();
};

// |amp|^2 at every grid point (a probability density when normalized).
rvector probability_density(const Wavefunction& psi);

// <a|b> = sum conj(a_i) b_i dx. Grids and representation angles must match.
complex inner_product(const Wavefunction& a, const Wavefunction& b);

// |<a|b>|^2.
double overlap_fidelity(const Wavefunction& a, const Wavefunction& b);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

Moments mean_and_variance(const Wavefunction& psi);
Moments mean_and_variance(const QuadratureGrid& grid, const rvector& density);

// (1/2) * sum |p_i - q_i| dx for two densities on the same grid.
double total_variation_distance(const rvector& p, const rvector& q, double dx);

// sum |p_i - q_i| dx.
double l1_distance(const rvector& p, const rvector& q, double dx);

// Band-limited evaluation of psi at the uniform points u0 + m*du,
// m = 0..count-1 (Fourier interpolation on a zero-padded copy). Points far
// outside the original grid evaluate to ~0.
cvector evaluate_uniform(const Wavefunction& psi, double u0, double du,
                         std::size_t count);

// Linear interpolation of tabulated values at x; 0 outside the grid.
double linear_interpolate(const QuadratureGrid& grid, const rvector& values,
                          double x);

// Draws n samples from the piecewise-constant density (rectangle-rule mass
// density[i]*dx centered on x_i) by exact inverse-CDF sampling. The stream
// is fully determined by the seed.
rvector sample_from_density(const QuadratureGrid& grid, const rvector& density,
                            int n, std::uint64_t seed);

}  // namespace qndtomo
