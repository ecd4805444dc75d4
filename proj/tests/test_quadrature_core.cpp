// Tests for grids, FFT utilities, state constructors, and representation
// rotation. Expected values are closed forms evaluated in place.
// SPDX-License-Identifier: MIT
#include <cmath>
#include <random>

#include "doctest.h"
#include "fft_util.hpp"
#include "grid.hpp"
#include "rotation.hpp"
#include "states.hpp"
#include "test_helpers.hpp"

using namespace qndtomo;
using qndtomo::testing::max_abs_diff;
using qndtomo::testing::require_error;

namespace {

const QuadratureGrid kDefaultGrid{-8.0, 8.0, 512};
const QuadratureGrid kWideGrid{-16.0, 16.0, 1024};

Wavefunction analytic_coherent(const QuadratureGrid& g, double angle,
                               double x0, double p0) {
  return make_coherent(g, angle, x0, p0);
}

}  // namespace

TEST_CASE("grid validation rejects malformed grids") {
  require_error(ErrorCode::invalid_argument, [] {
    QuadratureGrid g{1.0, -1.0, 128};
    g.validate();
  });
  require_error(ErrorCode::invalid_argument, [] {
    QuadratureGrid g{-8.0, 8.0, 8};
    g.validate();
  });
}

TEST_CASE("linear convolution matches the direct sum") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  cvector a(17), b(29);
  for (complex& z : a) z = complex{u(rng), u(rng)};
  for (complex& z : b) z = complex{u(rng), u(rng)};

  cvector fast = fftu::linear_convolution(a, b);
  REQUIRE(fast.size() == a.size() + b.size() - 1);
  for (std::size_t m = 0; m < fast.size(); ++m) {
    complex direct = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (m >= k && m - k < b.size()) direct += a[k] * b[m - k];
    }
    CHECK(std::abs(fast[m] - direct) < 1e-12);
  }
}

TEST_CASE("chirp-z exponential sum matches the direct sum") {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::size_t K = 37, L = 23;
  cvector g(K);
  for (complex& z : g) z = complex{u(rng), u(rng)};
  const double y0 = -1.3, dy = 0.17, p0 = 0.4, dp = 0.09;

  cvector fast = fftu::czt_exponential_sum(g, y0, dy, p0, dp, L);
  for (std::size_t l = 0; l < L; ++l) {
    complex direct = 0.0;
    const double p = p0 + static_cast<double>(l) * dp;
    for (std::size_t k = 0; k < K; ++k) {
      const double y = y0 + static_cast<double>(k) * dy;
      direct += g[k] * std::exp(complex{0.0, p * y});
    }
    CHECK(std::abs(fast[l] - direct) < 1e-9);
  }
}

TEST_CASE("spectral shift reproduces an analytically displaced gaussian") {
  Wavefunction vac = make_vacuum(kDefaultGrid, 0.0);
  const double shift = 1.0;
  cvector moved = fftu::spectral_shift(vac.amp, kDefaultGrid.dx(), shift);
  for (int i = 0; i < kDefaultGrid.n_points; ++i) {
    const double x = kDefaultGrid.x(i) - shift;
    const double expect = std::exp(-0.5 * x * x) / std::pow(kPi, 0.25);
    CHECK(std::abs(moved[static_cast<std::size_t>(i)] - expect) < 1e-9);
  }
}

TEST_CASE("band-limited resampling evaluates between and beyond grid points") {
  Wavefunction psi = make_coherent(kDefaultGrid, 0.0, 0.7, 1.3);
  const double du = kDefaultGrid.dx();
  const double u0 = kDefaultGrid.x_min + 0.25 * du;

  cvector vals = evaluate_uniform(psi, u0, du, 512);
  // The constructor renormalizes, but on this grid the analytic form is
  // already normalized to ~1e-15, so compare against the closed form.
  for (std::size_t m = 0; m < vals.size(); ++m) {
    const double x = u0 + static_cast<double>(m) * du;
    const double d = x - 0.7;
    const complex expect =
        std::exp(complex{-0.5 * d * d, 1.3 * (x - 0.35)}) / std::pow(kPi, 0.25);
    CHECK(std::abs(vals[m] - expect) < 1e-9);
  }

  // Far outside the grid the interpolant must vanish, not wrap around.
  cvector outside = evaluate_uniform(psi, 12.0, 0.5, 8);
  for (const complex& z : outside) CHECK(std::abs(z) < 1e-9);
}

TEST_CASE("vacuum and number states have the textbook moments") {
  Wavefunction vac = make_vacuum(kDefaultGrid, 0.3);
  Moments mv = mean_and_variance(vac);
  CHECK(std::abs(mv.mean) < 1e-12);
  CHECK(std::abs(mv.variance - 0.5) < 1e-9);
  CHECK(std::abs(vac.norm_squared() - 1.0) < 1e-12);

  Wavefunction one = make_fock(kDefaultGrid, 0.0, 1);
  Moments m1 = mean_and_variance(one);
  CHECK(std::abs(m1.variance - 1.5) < 1e-9);
  // density of the first excited state at x = 1: 2 e^{-1} / sqrt(pi);
  // x = 1 is not a grid point, so evaluate the band-limited interpolant.
  const double expect = 2.0 / (std::exp(1.0) * std::sqrt(kPi));
  cvector at = evaluate_uniform(one, 1.0, 1.0, 1);
  CHECK(std::abs(std::norm(at[0]) - expect) < 1e-9);

  Wavefunction five = make_fock(kDefaultGrid, 0.0, 5);
  CHECK(std::abs(mean_and_variance(five).variance - 5.5) < 1e-9);
}

TEST_CASE("squeezed vacuum variance follows the squeezing law") {
  // Aligned axis: the represented quadrature carries variance e^{-2r}/2.
  SqueezeSpec sq{1.0, 2.0 * 0.4};
  Wavefunction aligned = make_squeezed_vacuum(kDefaultGrid, 0.4, sq);
  CHECK(std::abs(mean_and_variance(aligned).variance - 0.5 * std::exp(-2.0)) <
        1e-6);

  // Rotating the axis phase by pi swaps squeezed and anti-squeezed axes.
  SqueezeSpec anti{1.0, 2.0 * 0.4 + kPi};
  Wavefunction stretched = make_squeezed_vacuum(kWideGrid, 0.4, anti);
  CHECK(std::abs(mean_and_variance(stretched).variance - 0.5 * std::exp(2.0)) <
        1e-5);

  // Generic angle: V = [cosh 2r - sinh 2r cos(phase - 2 angle)]/2.
  SqueezeSpec gen{0.7, 1.1};
  const double angle = 0.25;
  Wavefunction psi = make_squeezed_vacuum(kWideGrid, angle, gen);
  const double expect =
      0.5 * (std::cosh(1.4) - std::sinh(1.4) * std::cos(1.1 - 2.0 * angle));
  CHECK(std::abs(mean_and_variance(psi).variance - expect) < 1e-8);
}

TEST_CASE("even cat state normalization matches the overlap formula") {
  const double x0 = 2.0 * std::sqrt(2.0);  // coherent amplitude alpha = 2
  Wavefunction cat = make_even_cat(kDefaultGrid, 0.0, x0);
  CHECK(std::abs(cat.norm_squared() - 1.0) < 1e-12);
  // |psi(x)|^2 = (e^{-(x-x0)^2/2} + e^{-(x+x0)^2/2})^2
  //              / (2 sqrt(pi) (1 + e^{-x0^2})), checked at a grid point.
  const int i = 256;
  const double x = kDefaultGrid.x(i);
  const double gp = std::exp(-0.5 * (x - x0) * (x - x0));
  const double gm = std::exp(-0.5 * (x + x0) * (x + x0));
  const double expect = (gp + gm) * (gp + gm) /
                        (2.0 * std::sqrt(kPi) * (1.0 + std::exp(-x0 * x0)));
  CHECK(std::abs(probability_density(cat)[i] - expect) < 1e-12);
}

TEST_CASE("constructors reject unresolvable or overflowing states") {
  require_error(ErrorCode::grid_resolution, [] {
    make_vacuum(QuadratureGrid{-8.0, 8.0, 28}, 0.0);  // dx ~ 0.59
  });
  require_error(ErrorCode::support_overflow, [] {
    make_fock(kDefaultGrid, 0.0, 15);
  });
  require_error(ErrorCode::support_overflow, [] {
    make_coherent(kDefaultGrid, 0.0, 5.0, 0.0);  // mean + 6 sigma > 8
  });
  require_error(ErrorCode::support_overflow, [] {
    // Anti-squeezed sigma ~ 1.92 needs > 11.5 of clearance.
    make_squeezed_vacuum(kDefaultGrid, 0.0, SqueezeSpec{1.0, kPi});
  });
  require_error(ErrorCode::invalid_argument, [] {
    make_squeezed_vacuum(kDefaultGrid, 0.0, SqueezeSpec{-0.5, 0.0});
  });
}

TEST_CASE("rotation preserves the vacuum exactly (zero-point phase absent)") {
  Wavefunction vac = make_vacuum(kDefaultGrid, 0.0);
  Wavefunction rot = rotate_representation(vac, 0.7);
  CHECK(max_abs_diff(rot.amp, vac.amp) < 1e-9);
  CHECK(std::abs(rot.norm_squared() - 1.0) < 1e-9);
}

TEST_CASE("quarter rotation is the ordinary fourier transform") {
  // e^{-i (pi/2) n} D(alpha)|0> = D(-i alpha)|0>: in the rotated
  // representation the displacement (x0, p0) becomes (p0, -x0), with no
  // extra global phase.
  Wavefunction psi = analytic_coherent(kDefaultGrid, 0.0, 1.0, 0.5);
  Wavefunction rot = rotate_representation(psi, 0.5 * kPi);
  Wavefunction expect = analytic_coherent(kDefaultGrid, 0.5 * kPi, 0.5, -1.0);
  CHECK(max_abs_diff(rot.amp, expect.amp) < 1e-8);
}

TEST_CASE("rotation matches the closed form at generic and small angles") {
  const double x0 = 1.2, p0 = -0.6;
  Wavefunction psi = analytic_coherent(kDefaultGrid, 0.0, x0, p0);
  for (double theta : {2.1, 0.25, -0.5 * kPi, kPi}) {
    Wavefunction rot = rotate_representation(psi, theta);
    const double c = std::cos(theta), s = std::sin(theta);
    Wavefunction expect =
        analytic_coherent(kDefaultGrid, theta, x0 * c + p0 * s, p0 * c - x0 * s);
    CAPTURE(theta);
    CHECK(max_abs_diff(rot.amp, expect.amp) < 1e-8);
    CHECK(std::abs(rot.norm_squared() - 1.0) < 1e-9);
  }
}

TEST_CASE("rotating a number state only applies the eigenphase") {
  for (int n : {1, 3}) {
    Wavefunction psi = make_fock(kDefaultGrid, 0.0, n);
    const double theta = 1.3;
    Wavefunction rot = rotate_representation(psi, theta);
    Wavefunction expect = make_fock(kDefaultGrid, theta, n);
    CAPTURE(n);
    CHECK(max_abs_diff(rot.amp, expect.amp) < 1e-8);
  }
}

TEST_CASE("rotating squeezed vacuum agrees with the rotated-frame closed form") {
  SqueezeSpec sq{0.8, 0.9};
  Wavefunction psi = make_squeezed_vacuum(kWideGrid, 0.0, sq);
  const double theta = 1.1;
  Wavefunction rot = rotate_representation(psi, theta);
  Wavefunction expect = make_squeezed_vacuum(kWideGrid, theta, sq);
  CHECK(max_abs_diff(rot.amp, expect.amp) < 1e-8);
}

TEST_CASE("rotations compose and invert") {
  Wavefunction cat = make_even_cat(kDefaultGrid, 0.0, 2.0);
  Wavefunction there = rotate_representation(cat, 0.9);
  Wavefunction back = rotate_representation(there, 0.0);
  CHECK(max_abs_diff(back.amp, cat.amp) < 1e-8);

  Wavefunction direct = rotate_representation(cat, 2.0);
  Wavefunction stepped = rotate_representation(there, 2.0);
  CHECK(max_abs_diff(direct.amp, stepped.amp) < 1e-7);
}

TEST_CASE("rotation rejects asymmetric or too-coarse grids") {
  require_error(ErrorCode::invalid_argument, [] {
    Wavefunction psi = make_vacuum(QuadratureGrid{-5.0, 8.0, 512}, 0.0);
    rotate_representation(psi, 1.0);
  });
  require_error(ErrorCode::grid_resolution, [] {
    // 64 points on [-8, 8]: the rotation chirps alias even when split.
    Wavefunction psi = make_vacuum(QuadratureGrid{-8.0, 8.0, 64}, 0.0);
    rotate_representation(psi, 1.0);
  });
}

TEST_CASE("inner product demands matching grids and angles") {
  Wavefunction a = make_vacuum(kDefaultGrid, 0.0);
  Wavefunction b = make_vacuum(kDefaultGrid, 0.5);
  require_error(ErrorCode::invalid_argument,
                [&] { (void)inner_product(a, b); });
  Wavefunction c = make_vacuum(kWideGrid, 0.0);
  require_error(ErrorCode::invalid_argument,
                [&] { (void)inner_product(a, c); });
  CHECK(std::abs(inner_product(a, a) - complex{1.0, 0.0}) < 1e-12);
}
