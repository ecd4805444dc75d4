// qndtomo: quantum-nondemolition signal/meter coupling and homodyne tomography.
// SPDX-License-Identifier: MIT
#include "wigner.hpp"

#include <cmath>
#include <cstddef>

#include "fft_util.hpp"

namespace qndtomo {

namespace {

// Below this |sin delta| the conditioning filter acts as a momentum boost;
// the remap form would divide by a ~ 0 gear and lose all accuracy.
constexpr double kMomentumBoostThreshold = 1e-3;

// Matches the floor used by condition_on_outcome.
constexpr double kRareOutcomeFloor = 1e-12;

}  // namespace

WignerFunction wigner_transform(const Wavefunction& psi) {
  psi.grid.validate();
  const int n = psi.grid.n_points;
  const std::size_t nn = static_cast<std::size_t>(n);
  const double dx = psi.grid.dx();
  const std::size_t m = 2 * nn;  // momentum bins
  const double dy = 2.0 * dx;
  const double dp = kTwoPi / (static_cast<double>(m) * dy);

  WignerFunction w;
  w.x_grid = psi.grid;
  w.p_grid = QuadratureGrid{-0.5 * static_cast<double>(m) * dp,
                            (0.5 * static_cast<double>(m) - 1.0) * dp,
                            static_cast<int>(m)};
  w.values.assign(nn * m, 0.0);

  const double scale = dy * static_cast<double>(m) / kTwoPi;
  cvector buf(m);
  for (std::size_t i = 0; i < nn; ++i) {
    std::fill(buf.begin(), buf.end(), complex(0.0, 0.0));
    // psi(x_i - y_k/2) conj(psi(x_i + y_k/2)) = psi[i-k] conj(psi[i+k]);
    // both indices stay on the grid for |k| <= min(i, n-1-i).
    const std::size_t reach = std::min(i, nn - 1 - i);
    for (std::size_t k = 0; k <= reach; ++k) {
      buf[k] = psi.amp[i - k] * std::conj(psi.amp[i + k]);
      if (k > 0) buf[m - k] = std::conj(buf[k]);
    }
    fftu::fft_inverse(buf);
    for (std::size_t l = 0; l < m; ++l) {
      w.values[i * m + l] = scale * buf[(l + m / 2) % m].real();
    }
  }
  return w;
}

rvector wigner_row(const Wavefunction& psi, double x0, double p0, double dp,
                   std::size_t count) {
  psi.grid.validate();
  if (count == 0) return {};
  const std::size_t n = static_cast<std::size_t>(psi.grid.n_points);
  const double dx = psi.grid.dx();
  const double dy = 2.0 * dx;

  // psi at x0 + j*dx, j = -(n-1) .. n-1.
  const cvector vals =
      evaluate_uniform(psi, x0 - static_cast<double>(n - 1) * dx, dx, 2 * n - 1);

  // Correlation g[m] = psi(x0 - k dx) conj(psi(x0 + k dx)), k = m - (n-1).
  cvector g(2 * n - 1);
  for (std::size_t m = 0; m < 2 * n - 1; ++m) {
    g[m] = vals[2 * (n - 1) - m] * std::conj(vals[m]);
  }

  const cvector sums = fftu::czt_exponential_sum(
      g, -static_cast<double>(n - 1) * dy, dy, p0, dp, count);
  rvector row(count);
  for (std::size_t l = 0; l < count; ++l) {
    row[l] = dy / kTwoPi * sums[l].real();
  }
  return row;
}

rvector wigner_x_marginal(const WignerFunction& w) {
  const std::size_t nx = static_cast<std::size_t>(w.x_grid.n_points);
  const std::size_t np = static_cast<std::size_t>(w.p_grid.n_points);
  const double dp = w.p_grid.dx();
  rvector marg(nx, 0.0);
  for (std::size_t i = 0; i < nx; ++i) {
    double s = 0.0;
    for (std::size_t l = 0; l < np; ++l) s += w.values[i * np + l];
    marg[i] = s * dp;
  }
  return marg;
}

double wigner_purity(const WignerFunction& w) {
  double s = 0.0;
  for (double v : w.values) s += v * v;
  return kTwoPi * s * w.x_grid.dx() * w.p_grid.dx();
}

WignerFunction conditional_wigner_via_filter(const BipartiteState& state,
                                             double outcome) {
  const CouplingSettings& c = state.coupling;
  const QuadratureGrid& gs = state.signal_grid();
  const std::size_t ns = static_cast<std::size_t>(gs.n_points);
  const double dxs = gs.dx();
  const double delta = c.delta();
  const double sin_delta = std::sin(delta);
  const double cos_delta = std::cos(delta);
  const double a = c.kappa * sin_delta;

  const WignerFunction ws = wigner_transform(state.signal_in);
  const std::size_t np = static_cast<std::size_t>(ws.p_grid.n_points);
  const double dp = ws.p_grid.dx();
  const double p_min = ws.p_grid.x_min;

  WignerFunction out;
  out.x_grid = ws.x_grid;
  out.p_grid = ws.p_grid;
  out.values.assign(ws.values.size(), 0.0);

  if (std::abs(sin_delta) < kMomentumBoostThreshold) {
    // The filter modulus is constant in x_s, so conditioning only boosts the
    // signal momentum: W_c(x, p) = W_s(x, p - kappa xbar cos delta).
    const double boost = c.kappa * outcome * cos_delta;
    for (std::size_t i = 0; i < ns; ++i) {
      const rvector row =
          wigner_row(state.signal_in, gs.x(static_cast<int>(i)),
                     p_min - boost, dp, np);
      std::copy(row.begin(), row.end(), out.values.begin() + i * np);
    }
    return out;
  }

  // Readout density at the conditioning outcome, for the filter
  // normalization (the conditional state is normalized by 1/sqrt(W)).
  const cvector meter_vals =
      evaluate_uniform(state.meter_in, outcome - a * gs.x_min, -a * dxs, ns);
  double density = 0.0;
  for (std::size_t i = 0; i < ns; ++i) {
    density += std::norm(state.signal_in.amp[i]) * std::norm(meter_vals[i]);
  }
  density *= dxs;
  if (density < kRareOutcomeFloor) {
    fail(ErrorCode::rare_outcome,
         "conditional_wigner_via_filter: readout density " +
             std::to_string(density) + " below floor");
  }

  const double filter_scale = 1.0 / (density * std::abs(a));
  // The filter samples the meter Wigner function at momenta stretched by
  // 1/a.  The discretized transform is periodic in momentum with period
  // pi / dx_meter, so beyond half that period the row wraps around and
  // re-imports the central peak instead of decaying.  A state resolved on
  // the meter grid has no genuine support that far out, so clamp to zero.
  const double q_half = 0.5 * kPi / state.meter_grid().dx();
  cvector filter_row(np);
  cvector signal_row(np);
  for (std::size_t i = 0; i < ns; ++i) {
    const double xs = gs.x(static_cast<int>(i));
    // Filter Wigner row: displaced meter Wigner with remapped momentum.
    const double pos = outcome - a * xs;
    const double ramp =
        0.5 * c.kappa * c.kappa * xs * std::sin(2.0 * delta) -
        c.kappa * outcome * cos_delta;
    // q(p') = -(p' + ramp)/a, evaluated on the p' grid p_min + l*dp.
    const rvector mrow = wigner_row(state.meter_in, pos,
                                    -(p_min + ramp) / a, -dp / a, np);
    for (std::size_t l = 0; l < np; ++l) {
      const double q = -(p_min + static_cast<double>(l) * dp + ramp) / a;
      filter_row[l] =
          std::abs(q) > q_half ? 0.0 : filter_scale * mrow[l];
      signal_row[l] = ws.values[i * np + l];
    }
    // W_c(x_i, p_n) = dp * sum_l W_F[l] W_s[n - l + np/2].
    const cvector conv = fftu::linear_convolution(filter_row, signal_row);
    for (std::size_t l = 0; l < np; ++l) {
      out.values[i * np + l] = dp * conv[l + np / 2].real();
    }
  }
  return out;
}

}  // namespace qndtomo
