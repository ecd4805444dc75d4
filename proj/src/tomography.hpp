// qndtomo: quantum-nondemolition signal/meter coupling and homodyne tomography.
// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <vector>

#include "wigner.hpp"

namespace qndtomo {

// Scan phases phi_k = k*pi/n, k = 0..n-1. The marginal observed at pump
// phase phi is the density of the quadrature x(phi + pi/2), so n phases
// cover the half-turn of projection directions a tomogram needs.
std::vector<double> tomography_phases(int n);

// Width of the readout smearing kernel for a meter squeezed by r (with the
// squeeze phase locked to the observed quadrature): sigma = e^{-r}/sqrt(2).
double meter_kernel_sigma(double squeeze_r);

// Ideal rescaled readout density on the signal's grid at scan phase phi:
// the signal density at x(phi + pi/2) convolved with a zero-mean Gaussian
// of std dev e^{-r} / (sqrt(2) * kappa). This is the density of xbar/kappa,
// where xbar is the meter readout of the full coupling at |delta| = pi/2.
// Throws grid_resolution when the kernel is too narrow for the grid
// (sigma < 2 dx).
rvector marginal_at_phase(const Wavefunction& signal, double pump_phase,
                          double squeeze_r, double kappa = 1.0);

// Raw meter readout samples xbar = kappa * x_s + eta at scan phase phi:
// x_s drawn from the rotated signal density, eta from the squeezed meter
// kernel N(0, e^{-2r}/2). Seed-deterministic (explicit Box-Muller; no
// library distributions).
rvector sample_homodyne(const Wavefunction& signal, double pump_phase,
                        double squeeze_r, double kappa, int n_samples,
                        std::uint64_t seed);

// One marginal of the tomographic scan: a normalized density over its own
// abscissa grid (in rescaled signal units xbar/kappa).
struct PhaseMarginal {
  double pump_phase = 0.0;
  QuadratureGrid grid;  // bin centers for histograms
  rvector density;
};

// Rescales raw readout samples by 1/kappa and bins them into a normalized
// density histogram. bin_width <= 0 chooses the Freedman-Diaconis width
// 2*IQR*n^{-1/3}.
PhaseMarginal bin_samples(const rvector& samples, double pump_phase,
                          double kappa, double bin_width = 0.0);

// Exact scan: marginal_at_phase at each of the n scan phases.
std::vector<PhaseMarginal> scan_marginals(const Wavefunction& signal,
                                          int n_phases, double squeeze_r,
                                          double kappa = 1.0);

// Sampled scan: n_samples homodyne draws per phase, rescaled and binned
// with a fixed bin width (default 0.15 keeps the projection Nyquist
// k_c = pi/0.15 ~ 21 well above the states of interest). Each phase uses
// its own sub-seed derived from `seed`.
std::vector<PhaseMarginal> scan_marginals_sampled(const Wavefunction& signal,
                                                  int n_phases,
                                                  double squeeze_r,
                                                  double kappa, int n_samples,
                                                  std::uint64_t seed,
                                                  double bin_width = 0.15);

// Filtered back-projection of a marginal scan onto the (x, p) grid.
// Each marginal is zero-extended to cover the back-projection chords,
// filtered in frequency with |k| * cos(pi k / (2 k_c)) on a generously
// zero-padded FFT (the filter's position-space tail decays only like
// 1/s^2), and accumulated with cubic interpolation:
//   W(x,p) = (pi/n) sum_k q_k(x cos th_k + p sin th_k),  th_k = phi_k + pi/2.
// k_c <= 0 selects pi / (coarsest marginal spacing). The result converges
// to the Wigner function convolved with the isotropic meter kernel.
WignerFunction reconstruct_wigner(const std::vector<PhaseMarginal>& scan,
                                  const QuadratureGrid& x_grid,
                                  const QuadratureGrid& p_grid,
                                  double k_c = 0.0);

}  // namespace qndtomo
