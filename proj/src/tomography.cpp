// qndtomo: quantum-nondemolition signal/meter coupling and homodyne tomography.
// SPDX-License-Identifier: MIT
#include "tomography.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <string>

#include "fft_util.hpp"
#include "rotation.hpp"

namespace qndtomo {

namespace {

constexpr double kMaxSqueeze = 25.0;
constexpr double kMaxKappa = 100.0;
constexpr int kMaxSamples = 100000000;

void check_kappa(double kappa) {
  if (!(std::isfinite(kappa)) || kappa <= 0.0 || kappa > kMaxKappa) {
    fail(ErrorCode::invalid_argument,
         "kappa must be in (0, " + std::to_string(kMaxKappa) + "], got " +
             std::to_string(kappa));
  }
}

void check_squeeze(double r) {
  if (!(std::isfinite(r)) || r < 0.0 || r > kMaxSqueeze) {
    fail(ErrorCode::invalid_argument,
         "squeeze strength must be in [0, " + std::to_string(kMaxSqueeze) +
             "], got " + std::to_string(r));
  }
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// SplitMix64 finalizer: decorrelates per-phase sub-seeds.
std::uint64_t mix_seed(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double catmull_rom(double ym1, double y0, double y1, double y2, double u) {
  return 0.5 * (2.0 * y0 + (-ym1 + y1) * u +
                (2.0 * ym1 - 5.0 * y0 + 4.0 * y1 - y2) * u * u +
                (-ym1 + 3.0 * y0 - 3.0 * y1 + y2) * u * u * u);
}

}  // namespace

std::vector<double> tomography_phases(int n) {
  if (n < 1) {
    fail(ErrorCode::invalid_argument,
         "phase count must be >= 1, got " + std::to_string(n));
  }
  std::vector<double> phases(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    phases[static_cast<std::size_t>(k)] = kPi * static_cast<double>(k) /
                                          static_cast<double>(n);
  }
  return phases;
}

double meter_kernel_sigma(double squeeze_r) {
  check_squeeze(squeeze_r);
  return std::exp(-squeeze_r) / std::sqrt(2.0);
}

rvector marginal_at_phase(const Wavefunction& signal, double pump_phase,
                          double squeeze_r, double kappa) {
  check_kappa(kappa);
  const Wavefunction rotated =
      rotate_representation(signal, pump_phase + 0.5 * kPi);
  const rvector dens = probability_density(rotated);
  const double dx = signal.grid.dx();
  const double sigma = meter_kernel_sigma(squeeze_r) / kappa;
  if (sigma < 2.0 * dx) {
    fail(ErrorCode::grid_resolution,
         "smearing kernel sigma " + std::to_string(sigma) +
             " needs dx <= sigma/2, grid has dx " + std::to_string(dx));
  }

  const std::size_t n = dens.size();
  const double inv_two_s2 = 1.0 / (2.0 * sigma * sigma);
  const double norm = dx / (sigma * std::sqrt(kTwoPi));
  const std::ptrdiff_t reach =
      static_cast<std::ptrdiff_t>(std::ceil(10.0 * sigma / dx));
  rvector out(n, 0.0);
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - reach);
    const std::ptrdiff_t hi =
        std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(n) - 1, i + reach);
    double acc = 0.0;
    for (std::ptrdiff_t j = lo; j <= hi; ++j) {
      const double t = static_cast<double>(i - j) * dx;
      acc += dens[static_cast<std::size_t>(j)] *
             std::exp(-t * t * inv_two_s2);
    }
    out[static_cast<std::size_t>(i)] = acc * norm;
  }
  return out;
}

rvector sample_homodyne(const Wavefunction& signal, double pump_phase,
                        double squeeze_r, double kappa, int n_samples,
                        std::uint64_t seed) {
  check_kappa(kappa);
  if (n_samples < 1 || n_samples > kMaxSamples) {
    fail(ErrorCode::invalid_argument,
         "sample count must be in [1, " + std::to_string(kMaxSamples) +
             "], got " + std::to_string(n_samples));
  }
  const Wavefunction rotated =
      rotate_representation(signal, pump_phase + 0.5 * kPi);
  const rvector dens = probability_density(rotated);
  const rvector xs =
      sample_from_density(rotated.grid, dens, n_samples, seed);

  const double sigma = meter_kernel_sigma(squeeze_r);
  std::mt19937_64 noise_rng(seed ^ 0x9E3779B97F4A7C15ULL);
  rvector out(static_cast<std::size_t>(n_samples));
  for (std::size_t i = 0; i < out.size(); ++i) {
    // Box-Muller with explicit uniforms, so streams are identical across
    // standard libraries.
    const double u1 = 1.0 - uniform01(noise_rng);  // (0, 1]
    const double u2 = uniform01(noise_rng);
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
    out[i] = kappa * xs[i] + sigma * z;
  }
  return out;
}

PhaseMarginal bin_samples(const rvector& samples, double pump_phase,
                          double kappa, double bin_width) {
  check_kappa(kappa);
  const std::size_t n = samples.size();
  if (n < 100) {
    fail(ErrorCode::invalid_argument,
         "histogram needs >= 100 samples, got " + std::to_string(n));
  }
  rvector v(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(samples[i])) {
      fail(ErrorCode::invalid_argument, "sample " + std::to_string(i) +
                                            " is not finite");
    }
    v[i] = samples[i] / kappa;
  }
  rvector sorted = v;
  std::sort(sorted.begin(), sorted.end());
  const double lo = sorted.front();
  const double hi = sorted.back();

  double h = bin_width;
  if (h <= 0.0) {
    const double iqr = sorted[(3 * n) / 4] - sorted[n / 4];
    h = 2.0 * iqr * std::pow(static_cast<double>(n), -1.0 / 3.0);
  }
  if (!(h > 0.0) || hi - lo < h) {
    fail(ErrorCode::invalid_argument,
         "degenerate samples: histogram bin width " + std::to_string(h) +
             " over range " + std::to_string(hi - lo));
  }

  const std::size_t nb =
      static_cast<std::size_t>(std::ceil((hi - lo) / h)) + 1;
  PhaseMarginal m;
  m.pump_phase = pump_phase;
  m.grid = QuadratureGrid{lo + 0.5 * h,
                          lo + 0.5 * h + static_cast<double>(nb - 1) * h,
                          static_cast<int>(nb)};
  m.density.assign(nb, 0.0);
  const double weight = 1.0 / (static_cast<double>(n) * h);
  for (std::size_t i = 0; i < n; ++i) {
    auto b = static_cast<std::size_t>((v[i] - lo) / h);
    if (b >= nb) b = nb - 1;
    m.density[b] += weight;
  }
  return m;
}

std::vector<PhaseMarginal> scan_marginals(const Wavefunction& signal,
                                          int n_phases, double squeeze_r,
                                          double kappa) {
  const std::vector<double> phases = tomography_phases(n_phases);
  std::vector<PhaseMarginal> scan;
  scan.reserve(phases.size());
  for (double phi : phases) {
    scan.push_back(PhaseMarginal{
        phi, signal.grid, marginal_at_phase(signal, phi, squeeze_r, kappa)});
  }
  return scan;
}

std::vector<PhaseMarginal> scan_marginals_sampled(const Wavefunction& signal,
                                                  int n_phases,
                                                  double squeeze_r,
                                                  double kappa, int n_samples,
                                                  std::uint64_t seed,
                                                  double bin_width) {
  if (!(bin_width > 0.0) || !std::isfinite(bin_width)) {
    fail(ErrorCode::invalid_argument,
         "sampled scan needs a positive bin width, got " +
             std::to_string(bin_width));
  }
  const std::vector<double> phases = tomography_phases(n_phases);
  std::vector<PhaseMarginal> scan;
  scan.reserve(phases.size());
  for (std::size_t k = 0; k < phases.size(); ++k) {
    const rvector samples =
        sample_homodyne(signal, phases[k], squeeze_r, kappa, n_samples,
                        mix_seed(seed ^ static_cast<std::uint64_t>(k)));
    scan.push_back(bin_samples(samples, phases[k], kappa, bin_width));
  }
  return scan;
}

WignerFunction reconstruct_wigner(const std::vector<PhaseMarginal>& scan,
                                  const QuadratureGrid& x_grid,
                                  const QuadratureGrid& p_grid, double k_c) {
  if (scan.empty()) {
    fail(ErrorCode::invalid_argument, "marginal scan is empty");
  }
  x_grid.validate();
  p_grid.validate();
  double max_ds = 0.0;
  for (std::size_t k = 0; k < scan.size(); ++k) {
    const PhaseMarginal& m = scan[k];
    const double ds = m.grid.dx();
    if (m.grid.n_points < 4 || !(ds > 0.0) || !std::isfinite(ds) ||
        m.density.size() != static_cast<std::size_t>(m.grid.n_points)) {
      fail(ErrorCode::invalid_argument,
           "marginal " + std::to_string(k) + " is malformed");
    }
    max_ds = std::max(max_ds, ds);
  }
  if (k_c <= 0.0) k_c = kPi / max_ds;
  if (!std::isfinite(k_c)) {
    fail(ErrorCode::invalid_argument, "frequency cutoff must be finite");
  }

  const double max_x = std::max(std::abs(x_grid.x_min), std::abs(x_grid.x_max));
  const double max_p = std::max(std::abs(p_grid.x_min), std::abs(p_grid.x_max));
  const double s_need = std::hypot(max_x, max_p);

  const std::size_t nx = static_cast<std::size_t>(x_grid.n_points);
  const std::size_t np = static_cast<std::size_t>(p_grid.n_points);
  WignerFunction w;
  w.x_grid = x_grid;
  w.p_grid = p_grid;
  w.values.assign(nx * np, 0.0);
  const double dtheta = kPi / static_cast<double>(scan.size());

  for (const PhaseMarginal& m : scan) {
    const double ds = m.grid.dx();
    const std::size_t n_s = static_cast<std::size_t>(m.grid.n_points);
    // Zero-extend so every back-projection chord lands two points inside.
    const auto pad_for = [&](double edge_gap) {
      return edge_gap > 0.0
                 ? static_cast<std::size_t>(std::ceil(edge_gap / ds))
                 : std::size_t{0};
    };
    const std::size_t pad_left = pad_for(m.grid.x_min + s_need + 2.0 * ds);
    const std::size_t pad_right = pad_for(s_need + 2.0 * ds - m.grid.x_max);
    const std::size_t n_cov = n_s + pad_left + pad_right;
    // Generous zero padding: the ramp filter's position-space kernel decays
    // only like 1/s^2, so circular wrap-around shows up as a flat bias over
    // the data window unless pushed far out.
    const std::size_t padded = fftu::next_pow2(16 * n_cov);
    const double s0 = m.grid.x_min - static_cast<double>(pad_left) * ds;

    cvector buf(padded, complex(0.0, 0.0));
    for (std::size_t j = 0; j < n_s; ++j) buf[pad_left + j] = m.density[j];
    fftu::fft_forward(buf);
    for (std::size_t idx = 0; idx < padded; ++idx) {
      const double m_signed = idx < padded / 2
                                  ? static_cast<double>(idx)
                                  : static_cast<double>(idx) -
                                        static_cast<double>(padded);
      const double k = kTwoPi * m_signed / (static_cast<double>(padded) * ds);
      const double ak = std::abs(k);
      const double filter =
          ak <= k_c ? ak * std::cos(0.5 * kPi * ak / k_c) : 0.0;
      buf[idx] *= filter;
    }
    fftu::fft_inverse(buf);
    rvector q(padded);
    for (std::size_t j = 0; j < padded; ++j) {
      q[j] = buf[j].real() / kTwoPi;
    }

    const double theta = m.pump_phase + 0.5 * kPi;
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    for (std::size_t i = 0; i < nx; ++i) {
      const double base = x_grid.x(static_cast<int>(i)) * ct;
      for (std::size_t l = 0; l < np; ++l) {
        const double s = base + p_grid.x(static_cast<int>(l)) * st;
        const double t = (s - s0) / ds;
        const auto j0 = static_cast<std::ptrdiff_t>(std::floor(t));
        if (j0 < 1 || j0 + 2 >= static_cast<std::ptrdiff_t>(padded)) continue;
        const double u = t - static_cast<double>(j0);
        const std::size_t j = static_cast<std::size_t>(j0);
        w.values[i * np + l] +=
            dtheta * catmull_rom(q[j - 1], q[j], q[j + 1], q[j + 2], u);
      }
    }
  }
  return w;
}

}  // namespace qndtomo
