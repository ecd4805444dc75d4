#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "states.hpp"
#include "test_helpers.hpp"
#include "tomography.hpp"

using namespace qndtomo;
using namespace qndtomo::testing;

namespace {

const QuadratureGrid kGridBig{-8.0, 8.0, 1024};
const QuadratureGrid kGridCoarse{-8.0, 8.0, 256};
const QuadratureGrid kRecon{-6.0, 6.0, 241};

double normal_pdf(double x, double mean, double var) {
  return std::exp(-(x - mean) * (x - mean) / (2.0 * var)) /
         std::sqrt(kTwoPi * var);
}

double normal_cdf(double x, double mean, double var) {
  return 0.5 * std::erfc(-(x - mean) / std::sqrt(2.0 * var));
}

// Kolmogorov-Smirnov distance between samples and a normal law.
double ks_distance(rvector samples, double mean, double var) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = normal_cdf(samples[i], mean, var);
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
  }
  return d;
}

// One-photon Wigner function smeared by an isotropic Gaussian of variance
// sig2 per axis: (1/(4 pi b)) e^{-r^2/(4b)} (1 + r^2/(8 b^2) - 1/(2b)),
// b = 1/4 + sig2/2.
double smeared_one_photon_wigner(double x, double p, double sig2) {
  const double b = 0.25 + 0.5 * sig2;
  const double r2 = x * x + p * p;
  return std::exp(-r2 / (4.0 * b)) / (4.0 * kPi * b) *
         (1.0 + r2 / (8.0 * b * b) - 1.0 / (2.0 * b));
}

}  // namespace

TEST_CASE("scan phases cover the half turn uniformly") {
  const std::vector<double> p8 = tomography_phases(8);
  REQUIRE(p8.size() == 8);
  CHECK(p8.front() == 0.0);
  for (std::size_t k = 0; k < 8; ++k) {
    CHECK(p8[k] == doctest::Approx(kPi * static_cast<double>(k) / 8.0));
  }
  CHECK(tomography_phases(1) == std::vector<double>{0.0});
  require_error(ErrorCode::invalid_argument, [] { tomography_phases(0); });
}

TEST_CASE("ideal marginals are Gaussian laws for Gaussian states") {
  SUBCASE("vacuum at any phase") {
    const Wavefunction vac = make_vacuum(kGridBig, 0.0);
    const rvector marg = marginal_at_phase(vac, 0.9, 1.0, 1.0);
    const double var = 0.5 + std::exp(-2.0) / 2.0;
    double worst = 0.0;
    for (int i = 0; i < kGridBig.n_points; ++i) {
      worst = std::max(worst,
                       std::abs(marg[i] - normal_pdf(kGridBig.x(i), 0.0, var)));
    }
    CHECK(worst < 1e-9);
  }

  SUBCASE("displaced state: the mean follows the scan phase") {
    const Wavefunction coh = make_coherent(kGridBig, 0.0, 1.0, 0.5);
    const double phi = 0.6;
    const double theta = phi + 0.5 * kPi;
    const double mean = 1.0 * std::cos(theta) + 0.5 * std::sin(theta);
    const double kappa = 1.4;
    const double var = 0.5 + std::exp(-2.0 * 0.8) / (2.0 * kappa * kappa);
    const rvector marg = marginal_at_phase(coh, phi, 0.8, kappa);
    double worst = 0.0;
    for (int i = 0; i < kGridBig.n_points; ++i) {
      worst = std::max(worst,
                       std::abs(marg[i] - normal_pdf(kGridBig.x(i), mean, var)));
    }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("stronger meter squeezing sharpens the marginal toward the density") {
  const Wavefunction one = make_fock(kGridBig, 0.0, 1);
  const rvector truth = probability_density(one);
  double prev = 1e300;
  for (double r : {0.5, 1.5, 2.5}) {
    const rvector marg = marginal_at_phase(one, 0.0, r, 1.0);
    const double dist = l1_distance(marg, truth, kGridBig.dx());
    CHECK(dist < prev);
    prev = dist;
  }
  // At r = 2.5 the kernel is nearly a delta on this grid.
  CHECK(prev < 0.01);
}

TEST_CASE("homodyne samples follow the smeared readout law") {
  const Wavefunction vac = make_vacuum(kGridBig, 0.0);
  const double kappa = 1.3;
  const rvector s = sample_homodyne(vac, 0.4, 1.0, kappa, 20000, 7);
  REQUIRE(s.size() == 20000);
  // Raw readout: kappa * x_s + squeezed noise.
  const double var = kappa * kappa * 0.5 + std::exp(-2.0) / 2.0;
  CHECK(ks_distance(s, 0.0, var) < 1.63 / std::sqrt(20000.0));

  SUBCASE("seed determinism") {
    const rvector again = sample_homodyne(vac, 0.4, 1.0, kappa, 20000, 7);
    CHECK(s == again);
    const rvector other = sample_homodyne(vac, 0.4, 1.0, kappa, 20000, 8);
    CHECK(s != other);
  }
}

TEST_CASE("histogram estimate converges to the ideal marginal") {
  const Wavefunction vac = make_vacuum(kGridBig, 0.0);
  const double var = 0.5 + std::exp(-2.0) / 2.0;
  double prev = 1e300;
  for (int n : {1000, 10000, 100000}) {
    const rvector s = sample_homodyne(vac, 0.0, 1.0, 1.0, n, 11);
    const PhaseMarginal m = bin_samples(s, 0.0, 1.0);
    double l1 = 0.0;
    double mass = 0.0;
    for (int j = 0; j < m.grid.n_points; ++j) {
      l1 += std::abs(m.density[j] - normal_pdf(m.grid.x(j), 0.0, var)) *
            m.grid.dx();
      mass += m.density[j] * m.grid.dx();
    }
    CHECK(std::abs(mass - 1.0) < 1e-9);
    CHECK(l1 < prev);
    prev = l1;
  }
  CHECK(prev < 0.05);
}

TEST_CASE("filtered back-projection recovers the smeared vacuum Wigner disk") {
  const Wavefunction vac = make_vacuum(kGridBig, 0.0);
  const std::vector<PhaseMarginal> scan = scan_marginals(vac, 24, 2.0, 1.0);
  const WignerFunction w = reconstruct_wigner(scan, kRecon, kRecon);

  const double sig2 = std::exp(-4.0) / 2.0;
  const double v = 0.5 + sig2;
  double worst = 0.0;
  for (int i = 0; i < kRecon.n_points; i += 4) {
    for (int l = 0; l < kRecon.n_points; l += 4) {
      const double x = kRecon.x(i);
      const double p = kRecon.x(l);
      const double expected =
          std::exp(-(x * x + p * p) / (2.0 * v)) / (kTwoPi * v);
      worst = std::max(worst, std::abs(w.at(i, l) - expected));
    }
  }
  CHECK(worst < 5e-4);

  // Rotational symmetry of the reconstruction.
  CHECK(std::abs(w.at(120, 160) - w.at(160, 120)) < 1e-4);

  double mass = 0.0;
  for (double val : w.values) mass += val;
  mass *= kRecon.dx() * kRecon.dx();
  CHECK(std::abs(mass - 1.0) < 1e-3);
}

TEST_CASE("exact-marginal back-projection resolves the one-photon dip") {
  const Wavefunction one = make_fock(kGridBig, 0.0, 1);
  const std::vector<PhaseMarginal> scan = scan_marginals(one, 24, 2.0, 1.0);
  const WignerFunction w = reconstruct_wigner(scan, kRecon, kRecon);

  const double sig2 = std::exp(-4.0) / 2.0;
  double worst = 0.0;
  for (int i = 0; i < kRecon.n_points; i += 4) {
    for (int l = 0; l < kRecon.n_points; l += 4) {
      const double expected =
          smeared_one_photon_wigner(kRecon.x(i), kRecon.x(l), sig2);
      worst = std::max(worst, std::abs(w.at(i, l) - expected));
    }
  }
  CHECK(worst < 1e-3);
  // Central negativity: smeared closed form gives -0.3014 at the origin.
  CHECK(w.at(120, 120) == doctest::Approx(-0.30138).epsilon(0.01));
}

TEST_CASE("sampled tomography still shows the one-photon negativity") {
  const Wavefunction one = make_fock(kGridBig, 0.0, 1);
  const std::vector<PhaseMarginal> scan =
      scan_marginals_sampled(one, 24, 2.0, 1.0, 30000, 20260814);
  const WignerFunction w = reconstruct_wigner(scan, kRecon, kRecon);

  CHECK(w.at(120, 120) < -0.25);

  const double sig2 = std::exp(-4.0) / 2.0;
  double worst = 0.0;
  for (int i = 60; i <= 180; i += 6) {
    for (int l = 60; l <= 180; l += 6) {
      const double expected =
          smeared_one_photon_wigner(kRecon.x(i), kRecon.x(l), sig2);
      worst = std::max(worst, std::abs(w.at(i, l) - expected));
    }
  }
  CHECK(worst < 0.05);

  double mass = 0.0;
  for (double val : w.values) mass += val;
  mass *= kRecon.dx() * kRecon.dx();
  CHECK(std::abs(mass - 1.0) < 0.05);
}

TEST_CASE("sampled scans are seed-deterministic") {
  const Wavefunction vac = make_vacuum(kGridBig, 0.0);
  const auto a = scan_marginals_sampled(vac, 4, 1.0, 1.0, 2000, 99);
  const auto b = scan_marginals_sampled(vac, 4, 1.0, 1.0, 2000, 99);
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].density == b[k].density);
    CHECK(a[k].grid == b[k].grid);
  }
  const auto c = scan_marginals_sampled(vac, 4, 1.0, 1.0, 2000, 100);
  bool any_diff = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].density != c[k].density) any_diff = true;
  }
  CHECK(any_diff);
}

TEST_CASE("tomography rejects unusable inputs") {
  const Wavefunction vac_coarse = make_vacuum(kGridCoarse, 0.0);
  // Kernel sigma 0.058 < 2 dx = 0.125 on the coarse grid.
  require_error(ErrorCode::grid_resolution,
                [&] { marginal_at_phase(vac_coarse, 0.0, 2.5, 1.0); });
  require_error(ErrorCode::invalid_argument,
                [&] { marginal_at_phase(vac_coarse, 0.0, 1.0, 0.0); });
  require_error(ErrorCode::invalid_argument, [&] {
    sample_homodyne(vac_coarse, 0.0, 1.0, 1.0, 0, 1);
  });
  require_error(ErrorCode::invalid_argument,
                [] { bin_samples(rvector(50, 1.0), 0.0, 1.0); });
  require_error(ErrorCode::invalid_argument,
                [] { bin_samples(rvector(500, 1.0), 0.0, 1.0); });
  require_error(ErrorCode::invalid_argument,
                [] { reconstruct_wigner({}, kRecon, kRecon); });
}
