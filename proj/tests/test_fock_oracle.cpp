// Tests for the truncated number-basis oracle: operator algebra, closed-form
// state amplitudes, grid projection consistency, and operator identities.
// SPDX-License-Identifier: MIT
#include <cmath>

#include "doctest.h"
#include "fock.hpp"
#include "rotation.hpp"
#include "states.hpp"
#include "test_helpers.hpp"

using namespace qndtomo;
using qndtomo::testing::max_abs_diff;

namespace {

const QuadratureGrid kGrid{-8.0, 8.0, 512};

double factorial(int n) { return std::tgamma(static_cast<double>(n) + 1.0); }

}  // namespace

TEST_CASE("ladder commutator is the identity away from the truncation edge") {
  const int dim = 64;
  fock::Matrix a = fock::annihilation(dim);
  fock::Matrix comm = a * a.adjoint() - a.adjoint() * a;
  for (int n = 0; n < dim - 1; ++n) {
    for (int m = 0; m < dim - 1; ++m) {
      const complex expect = (n == m) ? complex{1.0, 0.0} : complex{0.0, 0.0};
      REQUIRE(std::abs(comm(n, m) - expect) < 1e-12);
    }
  }
  // Vacuum quadrature variance <0|X(theta)^2|0> = 1/2 at any angle.
  fock::Matrix X = fock::quadrature(dim, 0.77);
  CHECK(std::abs((X * X)(0, 0).real() - 0.5) < 1e-12);
}

TEST_CASE("coherent state amplitudes follow the poisson closed form") {
  const int dim = 64;
  const complex alpha{0.8, 0.3};
  fock::Vector c = fock::coherent_state(dim, alpha);
  const double pref = std::exp(-0.5 * std::norm(alpha));
  for (int n = 0; n < 30; ++n) {
    const complex expect = pref * std::pow(alpha, n) / std::sqrt(factorial(n));
    REQUIRE(std::abs(c(n) - expect) < 1e-10);
  }
  CHECK(fock::truncation_leakage(c) < 1e-12);
}

TEST_CASE("squeezed state amplitudes follow the even closed form") {
  const int dim = 128;
  const double r = 1.0, phase = 0.7;
  fock::Vector c = fock::squeezed_state(dim, r, phase);
  const complex factor =
      -std::exp(complex{0.0, phase}) * std::tanh(r);
  for (int m = 0; m < 20; ++m) {
    const complex expect = std::pow(std::cosh(r), -0.5) * std::pow(factor, m) *
                           std::sqrt(factorial(2 * m)) /
                           (std::pow(2.0, m) * factorial(m));
    REQUIRE(std::abs(c(2 * m) - expect) < 1e-8);
    REQUIRE(std::abs(c(2 * m + 1)) < 1e-12);
  }
  // Variance of the aligned quadrature X(phase/2) is e^{-2r}/2.
  fock::Matrix rho = c * c.adjoint();
  CHECK(std::abs(fock::quadrature_variance(rho, 0.5 * phase) -
                 0.5 * std::exp(-2.0 * r)) < 1e-9);
  CHECK(fock::truncation_leakage(c) < 1e-12);
}

TEST_CASE("grid projection agrees with the closed-form constructors") {
  SUBCASE("number states, including the rotation eigenphase") {
    for (int n : {0, 1, 4}) {
      Wavefunction a = fock::project_to_grid(fock::fock_state(64, n), kGrid, 0.9);
      Wavefunction b = make_fock(kGrid, 0.9, n);
      CAPTURE(n);
      CHECK(max_abs_diff(a.amp, b.amp) < 1e-12);
    }
  }
  SUBCASE("coherent states carry the exact displacement phase") {
    const complex alpha{0.9, -0.4};
    const double theta = 0.55;
    const complex rot = std::sqrt(2.0) * alpha * std::exp(complex{0.0, -theta});
    Wavefunction a =
        fock::project_to_grid(fock::coherent_state(64, alpha), kGrid, theta);
    Wavefunction b = make_coherent(kGrid, theta, rot.real(), rot.imag());
    CHECK(max_abs_diff(a.amp, b.amp) < 1e-9);
  }
  SUBCASE("squeezed vacuum matches the complex-gaussian closed form") {
    const double r = 1.0, phase = 0.7, theta = 0.3;
    Wavefunction a = fock::project_to_grid(fock::squeezed_state(128, r, phase),
                                           kGrid, theta);
    Wavefunction b = make_squeezed_vacuum(kGrid, theta, SqueezeSpec{r, phase});
    CHECK(max_abs_diff(a.amp, b.amp) < 1e-7);
  }
}

TEST_CASE("grid rotation matches the number-operator eigenphases") {
  // A non-trivial superposition: normalized coherent + squeezed mixture.
  const int dim = 96;
  fock::Vector v = fock::coherent_state(dim, complex{0.9, 0.2}) +
                   0.7 * fock::squeezed_state(dim, 0.6, 0.9);
  v.normalize();
  Wavefunction start = fock::project_to_grid(v, kGrid, 0.2);
  Wavefunction rotated = rotate_representation(start, 1.5);
  Wavefunction expect = fock::project_to_grid(v, kGrid, 1.5);
  CHECK(max_abs_diff(rotated.amp, expect.amp) < 1e-7);
}

TEST_CASE("displacements compose with the glauber phase") {
  const int dim = 96, block = 48;
  const complex alpha{0.5, 0.2}, beta{-0.3, 0.4};
  fock::Matrix lhs = fock::displacement(dim, alpha) * fock::displacement(dim, beta);
  const complex phase =
      std::exp(complex{0.0, (alpha * std::conj(beta)).imag()});
  fock::Matrix rhs = phase * fock::displacement(dim, alpha + beta);
  CHECK((lhs.topLeftCorner(block, block) - rhs.topLeftCorner(block, block))
            .cwiseAbs()
            .maxCoeff() < 1e-9);
}

TEST_CASE("a quadrature kick is a displacement") {
  const int dim = 96, block = 48;
  const double q = 0.9, theta = 0.6;
  fock::Matrix lhs = fock::hermitian_evolution(fock::quadrature(dim, theta), q);
  const complex alpha =
      -kI * q * std::exp(complex{0.0, theta}) / std::sqrt(2.0);
  fock::Matrix rhs = fock::displacement(dim, alpha);
  CHECK((lhs.topLeftCorner(block, block) - rhs.topLeftCorner(block, block))
            .cwiseAbs()
            .maxCoeff() < 1e-9);
}

TEST_CASE("kick factorization and displaced-probe identities hold") {
  CHECK(fock::kick_factorization_residual(96, 0.8, 0.9, 0.35) < 1e-8);
  CHECK(fock::displaced_probe_residual(96, 0.8, 0.9, 0.35, 0.6) < 1e-8);
}

TEST_CASE("a kick shifts a localized probe by beta sin(delta)") {
  // The probe squeeze is kept moderate: a squeezed state's number-basis
  // tail decays like tanh(r)^{n/2}, and the truncated quadrature
  // exponential is only exact away from the truncation edge.
  const int dim = 64;
  const double r_probe = 0.5;
  // beta = 0: nothing happens.
  CHECK(fock::localized_kick_residual(dim, 0.0, 0.9, 0.35, 1.3, r_probe) <
        1e-12);
  // Aligned kick (delta = 0): pure momentum kick plus a phase, no shift.
  CHECK(fock::localized_kick_residual(dim, 1.0, 0.35, 0.35, 0.5, r_probe) <
        1e-8);
  // Perpendicular kick (delta = pi/2): pure position shift, no phase.
  CHECK(fock::localized_kick_residual(dim, 1.0, 0.35 + 0.5 * kPi, 0.35, 0.5,
                                      r_probe) < 1e-8);
  // Generic angle, displaced probe.
  CHECK(fock::localized_kick_residual(dim, 1.5, 1.2, 0.35, -1.0, r_probe) <
        1e-8);
}

TEST_CASE("coupled evolution preserves the pinned signal quadrature") {
  // Simulator convention: U = exp(+i kappa X_s X_m), realized here as the
  // oracle exponential with -kappa. The coupled signal quadrature X_s(ts) is
  // a constant of motion; the conjugate meter quadrature reads it out.
  const int dim = 64;
  const double kappa = 0.7, phi = 0.4;
  const double ts = phi + 0.5 * kPi, tm = phi;
  fock::Vector signal =
      fock::coherent_state(dim, std::exp(complex{0.0, ts}) / std::sqrt(2.0));
  fock::Vector meter = fock::vacuum_state(dim);
  fock::BipartiteFock joint =
      fock::qnd_evolution(signal, meter, -kappa, ts, tm);

  CHECK(std::abs(joint.coeff.norm() - 1.0) < 1e-12);
  CHECK(fock::truncation_leakage(joint) < 1e-10);

  fock::Matrix rho_s = fock::reduced_signal(joint);
  CHECK(std::abs(fock::quadrature_mean(rho_s, ts) - 1.0) < 1e-9);
  CHECK(std::abs(fock::quadrature_variance(rho_s, ts) - 0.5) < 1e-9);

  fock::Matrix rho_m = fock::reduced_meter(joint);
  // Readout mean +kappa*<x_s>; variance 1/2 + kappa^2 Var(x_s).
  CHECK(std::abs(fock::quadrature_mean(rho_m, tm + 0.5 * kPi) - kappa) < 1e-9);
  CHECK(std::abs(fock::quadrature_variance(rho_m, tm + 0.5 * kPi) -
                 0.5 * (1.0 + kappa * kappa)) < 1e-9);
  // The coupled meter quadrature itself is undisturbed.
  CHECK(std::abs(fock::quadrature_variance(rho_m, tm) - 0.5) < 1e-9);
}
