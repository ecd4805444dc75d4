// qndtomo: quantum-nondemolition signal/meter coupling and homodyne tomography.
// SPDX-License-Identifier: MIT
#include "grid.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fft_util.hpp"

namespace qndtomo {

rvector QuadratureGrid::points() const {
  rvector xs(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) xs[static_cast<std::size_t>(i)] = x(i);
  return xs;
}

bool QuadratureGrid::is_symmetric(double tol) const {
  return std::abs(x_min + x_max) <= tol * (x_max - x_min);
}

void QuadratureGrid::validate() const {
  if (!(x_min < x_max)) {
    fail(ErrorCode::invalid_argument, "grid: x_min must be below x_max");
  }
  if (n_points < 16) {
    fail(ErrorCode::invalid_argument, "grid: need at least 16 points");
  }
  if (!std::isfinite(x_min) || !std::isfinite(x_max)) {
    fail(ErrorCode::invalid_argument, "grid: bounds must be finite");
  }
}

double Wavefunction::norm_squared() const {
  double s = 0.0;
  for (const complex& a : amp) s += std::norm(a);
  return s * grid.dx();
}

void Wavefunction::normalize() {
  double n2 = norm_squared();
  if (!(n2 > 1e-300)) {
    fail(ErrorCode::internal, "normalize: vanishing norm");
  }
  double inv = 1.0 / std::sqrt(n2);
  for (complex& a : amp) a *= inv;
}

rvector probability_density(const Wavefunction& psi) {
  rvector d(psi.amp.size());
  for (std::size_t i = 0; i < psi.amp.size(); ++i) d[i] = std::norm(psi.amp[i]);
  return d;
}

complex inner_product(const Wavefunction& a, const Wavefunction& b) {
  if (!(a.grid == b.grid)) {
    fail(ErrorCode::invalid_argument, "inner_product: mismatched grids");
  }
  if (!same_angle(a.angle, b.angle, 1e-9)) {
    fail(ErrorCode::invalid_argument,
         "inner_product: mismatched representation angles");
  }
  complex s = 0.0;
  for (std::size_t i = 0; i < a.amp.size(); ++i) {
    s += std::conj(a.amp[i]) * b.amp[i];
  }
  return s * a.grid.dx();
}

double overlap_fidelity(const Wavefunction& a, const Wavefunction& b) {
  return std::norm(inner_product(a, b));
}

Moments mean_and_variance(const Wavefunction& psi) {
  return mean_and_variance(psi.grid, probability_density(psi));
}

Moments mean_and_variance(const QuadratureGrid& grid, const rvector& density) {
  if (density.size() != static_cast<std::size_t>(grid.n_points)) {
    fail(ErrorCode::invalid_argument, "mean_and_variance: size mismatch");
  }
  double dx = grid.dx();
  double w = 0.0, m1 = 0.0, m2 = 0.0;
  for (int i = 0; i < grid.n_points; ++i) {
    double xi = grid.x(i);
    double pi = density[static_cast<std::size_t>(i)];
    w += pi;
    m1 += pi * xi;
    m2 += pi * xi * xi;
  }
  w *= dx;
  m1 *= dx;
  m2 *= dx;
  if (!(w > 1e-300)) {
    fail(ErrorCode::invalid_argument, "mean_and_variance: zero-mass density");
  }
  Moments out;
  out.mean = m1 / w;
  out.variance = m2 / w - out.mean * out.mean;
  return out;
}

double total_variation_distance(const rvector& p, const rvector& q, double dx) {
  return 0.5 * l1_distance(p, q, dx);
}

double l1_distance(const rvector& p, const rvector& q, double dx) {
  if (p.size() != q.size()) {
    fail(ErrorCode::invalid_argument, "l1_distance: size mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return s * dx;
}

cvector evaluate_uniform(const Wavefunction& psi, double u0, double du,
                         std::size_t count) {
  return fftu::spectral_resample(psi.amp, psi.grid.x_min, psi.grid.dx(), u0, du,
                                 count);
}

double linear_interpolate(const QuadratureGrid& grid, const rvector& values,
                          double x) {
  if (values.size() != static_cast<std::size_t>(grid.n_points)) {
    fail(ErrorCode::invalid_argument, "linear_interpolate: size mismatch");
  }
  const double t = (x - grid.x_min) / grid.dx();
  if (t < 0.0 || t > static_cast<double>(grid.n_points - 1)) return 0.0;
  const int i = std::min(grid.n_points - 2, static_cast<int>(t));
  const double f = t - static_cast<double>(i);
  return (1.0 - f) * values[static_cast<std::size_t>(i)] +
         f * values[static_cast<std::size_t>(i) + 1];
}

rvector sample_from_density(const QuadratureGrid& grid, const rvector& density,
                            int n, std::uint64_t seed) {
  if (density.size() != static_cast<std::size_t>(grid.n_points)) {
    fail(ErrorCode::invalid_argument, "sample_from_density: size mismatch");
  }
  if (n < 0) fail(ErrorCode::invalid_argument, "sample_from_density: n < 0");

  const double dx = grid.dx();
  rvector cum(density.size() + 1, 0.0);
  for (std::size_t i = 0; i < density.size(); ++i) {
    const double p = density[i];
    if (!(p >= -1e-12) || !std::isfinite(p)) {
      fail(ErrorCode::invalid_argument,
           "sample_from_density: density must be nonnegative");
    }
    cum[i + 1] = cum[i] + std::max(0.0, p) * dx;
  }
  const double total = cum.back();
  if (!(total > 1e-300)) {
    fail(ErrorCode::invalid_argument, "sample_from_density: zero-mass density");
  }

  std::mt19937_64 rng(seed);
  rvector out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    // 53-bit uniform in [0, 1); bit-reproducible for a given seed.
    const double u =
        static_cast<double>(rng() >> 11) * 0x1.0p-53 * total;
    const auto it = std::upper_bound(cum.begin(), cum.end(), u);
    const std::size_t bin =
        std::min(density.size() - 1,
                 static_cast<std::size_t>(
                     std::max<std::ptrdiff_t>(0, it - cum.begin() - 1)));
    const double frac =
        (cum[bin + 1] > cum[bin]) ? (u - cum[bin]) / (cum[bin + 1] - cum[bin])
                                  : 0.5;
    out[static_cast<std::size_t>(k)] =
        grid.x(static_cast<int>(bin)) + dx * (frac - 0.5);
  }
  return out;
}

}  // namespace qndtomo
