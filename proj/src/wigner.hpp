// qndtomo: quantum-nondemolition signal/meter coupling and homodyne tomography.
// SPDX-License-Identifier: MIT
#pragma once

#include "qnd.hpp"

namespace qndtomo {

// W(x_i, p_l) sampled on the state's grid (rows) and the transform's native
// momentum grid (columns): M = 2 * n_points bins of width
// dp = pi/(n_points * dx), covering [-pi/(2 dx), pi/(2 dx)) with p = 0 on
// the grid.
struct WignerFunction {
  QuadratureGrid x_grid;
  QuadratureGrid p_grid;
  rvector values;  // row-major values[i * p_grid.n_points + l]

  double at(int i, int l) const {
    return values[static_cast<std::size_t>(i) *
                      static_cast<std::size_t>(p_grid.n_points) +
                  static_cast<std::size_t>(l)];
  }
};

// W(x,p) = (1/2 pi) int dy e^{i p y} psi(x - y/2) conj(psi(x + y/2)),
// discretized with y_k = 2 k dx (so the half-offset samples fall on grid
// points) and one FFT per row.
WignerFunction wigner_transform(const Wavefunction& psi);

// One row of the transform at arbitrary x0 and momenta p0 + l*dp,
// l = 0..count-1. The state is resampled onto x0 +- k dx by band-limited
// interpolation and the momentum sum evaluated by chirp-z, so neither x0
// nor the momenta need to lie on any native grid.
rvector wigner_row(const Wavefunction& psi, double x0, double p0, double dp,
                   std::size_t count);

// sum_l W(x_i, p_l) dp: recovers |psi(x_i)|^2 exactly for the native grid.
rvector wigner_x_marginal(const WignerFunction& w);

// 2 pi * sum W^2 dx dp: equals tr(rho^2), 1 for a pure state.
double wigner_purity(const WignerFunction& w);

// Conditional signal Wigner function after a homodyne readout `outcome`,
// computed WITHOUT forming the conditional wavefunction: each row of the
// signal Wigner function is convolved (in momentum) with the Wigner-type
// transform of the conditioning filter, which is the displaced meter Wigner
// function with remapped arguments,
//   W_F(x_s, p') = (1/(W(xbar) |a|)) W_m(xbar - a x_s,
//                    -[p' + (kappa^2 x_s/2) sin 2 delta
//                         - kappa xbar cos delta] / a),  a = kappa sin delta.
// When |sin delta| < 1e-3 the filter degenerates to a momentum boost and
// the row is evaluated directly at the shifted momenta
// W_c = W_s(x, p - kappa xbar cos delta).
// Output is on the same (x, p) grids as wigner_transform(signal), so the
// two routes are directly comparable.
WignerFunction conditional_wigner_via_filter(const BipartiteState& state,
                                             double outcome);

}  // namespace qndtomo
