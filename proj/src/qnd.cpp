// qndtomo: quantum-nondemolition signal/meter coupling and homodyne tomography.
// SPDX-License-Identifier: MIT
#include "qnd.hpp"

#include <algorithm>
#include <cmath>

#include "fft_util.hpp"
#include "rotation.hpp"

namespace qndtomo {
double entangling_phase(const CouplingSettings& c, double xs, double xbar) {
  const double d = c.delta();
  return 0.25 * c.kappa * c.kappa * xs * xs * std::sin(2.0 * d) -
         c.kappa * xs * xbar * std::cos(d);
}

namespace {

constexpr double kRareOutcomeFloor = 1e-12;

// Probability mass that the displaced meter pushes past its grid window,
// weighted by the signal density driving each displacement. This bounds the
// error of truncating every shifted row to the meter window.
double lost_shift_mass(const Wavefunction& signal, const Wavefunction& meter,
                       double a) {
  const QuadratureGrid& gm = meter.grid;
  const std::size_t nm = static_cast<std::size_t>(gm.n_points);
  rvector cum(nm + 1, 0.0);  // cum[k] = meter mass strictly left of bin k
  for (std::size_t j = 0; j < nm; ++j) {
    cum[j + 1] = cum[j] + std::norm(meter.amp[j]) * gm.dx();
  }
  const double total = cum.back();
  auto mass_left_of = [&](double x) {
    const double t = (x - gm.x_min) / gm.dx();
    if (t <= 0.0) return 0.0;
    if (t >= static_cast<double>(nm)) return total;
    const std::size_t k = static_cast<std::size_t>(t);
    return cum[k] + (t - static_cast<double>(k)) * (cum[k + 1] - cum[k]);
  };

  const QuadratureGrid& gs = signal.grid;
  double lost = 0.0;
  for (int i = 0; i < gs.n_points; ++i) {
    const double w =
        std::norm(signal.amp[static_cast<std::size_t>(i)]) * gs.dx();
    if (w < 1e-300) continue;
    const double s = a * gs.x(i);
    // Meter content originally in (x_max - s, inf) or (-inf, x_min - s)
    // leaves the window once shifted by s.
    lost += w * (total - mass_left_of(gm.x_max - s) + mass_left_of(gm.x_min - s));
  }
  return lost;
}

}  // namespace

void CouplingSettings::validate() const {
  if (!std::isfinite(kappa) || kappa < 0.0 || kappa > 100.0) {
    fail(ErrorCode::invalid_argument,
         "coupling: kappa must be finite, >= 0 and <= 100");
  }
  if (!std::isfinite(pump_phase) || !std::isfinite(homodyne_angle)) {
    fail(ErrorCode::invalid_argument, "coupling: angles must be finite");
  }
}

double BipartiteState::norm_squared() const {
  double s = 0.0;
  for (const complex& z : amp) s += std::norm(z);
  return s * signal_in.grid.dx() * meter_in.grid.dx();
}

BipartiteState entangle(const Wavefunction& signal, const Wavefunction& meter,
                        const CouplingSettings& coupling) {
  coupling.validate();
  BipartiteState st;
  st.coupling = coupling;
  st.signal_in = rotate_representation(signal, coupling.signal_angle());
  st.meter_in = rotate_representation(meter, coupling.homodyne_angle);

  const QuadratureGrid& gs = st.signal_in.grid;
  const QuadratureGrid& gm = st.meter_in.grid;
  const double a = coupling.kappa * std::sin(coupling.delta());
  const double xs_edge = std::max(std::abs(gs.x_min), std::abs(gs.x_max));

  // The phase ramp e^{+i kappa cos(delta) x_s xbar} lives on the meter axis;
  // it must stay below the meter grid's Nyquist rate.
  const double ramp = coupling.kappa * std::abs(std::cos(coupling.delta()));
  if (ramp * xs_edge > 0.8 * kPi / gm.dx()) {
    fail(ErrorCode::grid_resolution,
         "entangle: entangling phase ramp aliases on the meter grid; refine "
         "the meter grid or reduce kappa");
  }

  const std::size_t ns = static_cast<std::size_t>(gs.n_points);
  const std::size_t nm = static_cast<std::size_t>(gm.n_points);
  st.amp.resize(ns * nm);

  if (a == 0.0) {
    // In-phase operation: exact product with the entangling phase.
    for (std::size_t i = 0; i < ns; ++i) {
      const double xs = gs.x(static_cast<int>(i));
      const complex si = st.signal_in.amp[i];
      for (std::size_t j = 0; j < nm; ++j) {
        const double xb = gm.x(static_cast<int>(j));
        st.amp[i * nm + j] =
            si * st.meter_in.amp[j] *
            std::exp(complex{0.0, -entangling_phase(coupling, xs, xb)});
      }
    }
    return st;
  }

  const double max_shift = std::abs(a) * xs_edge;
  if (lost_shift_mass(st.signal_in, st.meter_in, a) > 1e-10) {
    fail(ErrorCode::support_overflow,
         "entangle: the displaced meter pushes non-negligible probability "
         "past the meter grid edge; enlarge the meter grid or reduce kappa");
  }

  fftu::PaddedSpectrum spectrum(st.meter_in.amp, gm.dx(), max_shift);
  for (std::size_t i = 0; i < ns; ++i) {
    const double xs = gs.x(static_cast<int>(i));
    const cvector row = spectrum.shifted(a * xs);
    const complex si = st.signal_in.amp[i];
    for (std::size_t j = 0; j < nm; ++j) {
      const double xb = gm.x(static_cast<int>(j));
      st.amp[i * nm + j] =
          si * row[j] *
          std::exp(complex{0.0, -entangling_phase(coupling, xs, xb)});
    }
  }
  return st;
}

rvector meter_distribution(const BipartiteState& state) {
  const std::size_t ns = static_cast<std::size_t>(state.signal_grid().n_points);
  const std::size_t nm = static_cast<std::size_t>(state.meter_grid().n_points);
  rvector w(nm, 0.0);
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t j = 0; j < nm; ++j) {
      w[j] += std::norm(state.amp[i * nm + j]);
    }
  }
  const double dxs = state.signal_grid().dx();
  for (double& v : w) v *= dxs;
  return w;
}

rvector meter_distribution_densities(const Wavefunction& signal,
                                     const Wavefunction& meter,
                                     const CouplingSettings& coupling) {
  coupling.validate();
  Wavefunction sig = rotate_representation(signal, coupling.signal_angle());
  Wavefunction met = rotate_representation(meter, coupling.homodyne_angle);

  const QuadratureGrid& gs = sig.grid;
  const QuadratureGrid& gm = met.grid;
  const double a = coupling.kappa * std::sin(coupling.delta());
  const rvector ps = probability_density(sig);
  const rvector pm = probability_density(met);
  const std::size_t nm = static_cast<std::size_t>(gm.n_points);

  rvector w(nm, 0.0);
  if (a == 0.0) {
    double mass = 0.0;
    for (const double p : ps) mass += p;
    mass *= gs.dx();
    for (std::size_t j = 0; j < nm; ++j) w[j] = mass * pm[j];
    return w;
  }

  const double xs_edge = std::max(std::abs(gs.x_min), std::abs(gs.x_max));
  cvector pm_c(pm.begin(), pm.end());
  fftu::PaddedSpectrum spectrum(pm_c, gm.dx(), std::abs(a) * xs_edge);
  for (int i = 0; i < gs.n_points; ++i) {
    const double weight = ps[static_cast<std::size_t>(i)] * gs.dx();
    if (weight == 0.0) continue;
    const cvector row = spectrum.shifted(a * gs.x(i));
    for (std::size_t j = 0; j < nm; ++j) w[j] += weight * row[j].real();
  }
  return w;
}

ConditionalResult condition_on_outcome(const BipartiteState& state,
                                       double outcome) {
  if (!std::isfinite(outcome)) {
    fail(ErrorCode::invalid_argument, "condition_on_outcome: outcome not finite");
  }
  const QuadratureGrid& gs = state.signal_grid();
  const CouplingSettings& c = state.coupling;
  const double a = c.kappa * std::sin(c.delta());
  const std::size_t ns = static_cast<std::size_t>(gs.n_points);

  // Meter factor evaluated at the uniformly spaced points xbar - a*x_s_i.
  cvector meter_vals;
  if (a == 0.0) {
    meter_vals.assign(ns, evaluate_uniform(state.meter_in, outcome, 1.0, 1)[0]);
  } else {
    meter_vals = evaluate_uniform(state.meter_in, outcome - a * gs.x_min,
                                  -a * gs.dx(), ns);
  }

  ConditionalResult out;
  out.state.grid = gs;
  out.state.angle = state.signal_in.angle;
  out.state.amp.resize(ns);
  double density = 0.0;
  for (std::size_t i = 0; i < ns; ++i) {
    const double xs = gs.x(static_cast<int>(i));
    const complex v =
        state.signal_in.amp[i] * meter_vals[i] *
        std::exp(complex{0.0, -entangling_phase(c, xs, outcome)});
    out.state.amp[i] = v;
    density += std::norm(v);
  }
  density *= gs.dx();
  if (density < kRareOutcomeFloor) {
    fail(ErrorCode::rare_outcome,
         "condition_on_outcome: outcome density below 1e-12; this readout "
         "value is essentially never observed");
  }
  const double inv = 1.0 / std::sqrt(density);
  for (complex& z : out.state.amp) z *= inv;
  out.outcome_density = density;
  return out;
}

WeakMeasurementResult weak_measurement_estimate(
    const Wavefunction& signal, const Wavefunction& meter,
    const CouplingSettings& coupling, int n_samples, std::uint64_t seed) {
  coupling.validate();
  if (n_samples < 2) {
    fail(ErrorCode::invalid_argument, "weak measurement: need >= 2 samples");
  }
  const double gear = coupling.kappa * std::sin(coupling.delta());
  if (std::abs(gear) < 1e-9) {
    fail(ErrorCode::invalid_argument,
         "weak measurement: kappa*sin(delta) ~ 0 reads out nothing; move the "
         "homodyne angle away from the pump phase");
  }

  BipartiteState st = entangle(signal, meter, coupling);
  const Moments sig_m = mean_and_variance(st.signal_in);
  const Moments met_m = mean_and_variance(st.meter_in);
  const double ratio =
      std::sqrt(met_m.variance) / (std::abs(gear) * std::sqrt(sig_m.variance));
  if (ratio < 5.0) {
    fail(ErrorCode::invalid_argument,
         "weak measurement: meter readout width must dominate the geared "
         "signal spread by >= 5x; reduce kappa or broaden the meter");
  }

  const rvector w = meter_distribution(st);
  const rvector samples =
      sample_from_density(st.meter_grid(), w, n_samples, seed);
  double mean = 0.0;
  for (const double s : samples) mean += s;
  mean /= static_cast<double>(n_samples);
  double var = 0.0;
  for (const double s : samples) var += (s - mean) * (s - mean);
  var /= static_cast<double>(n_samples - 1);

  WeakMeasurementResult out;
  out.n_samples = n_samples;
  out.estimate = (mean - met_m.mean) / gear;
  out.std_error = std::sqrt(var / static_cast<double>(n_samples)) /
                  std::abs(gear);

  // Outcome-averaged fidelity: sum_j dxbar |<psi_s|column_j>|^2, since the
  // conditional state is column_j / sqrt(W_j) and the outcome weight W_j
  // cancels the normalization.
  const std::size_t ns = static_cast<std::size_t>(st.signal_grid().n_points);
  const std::size_t nm = static_cast<std::size_t>(st.meter_grid().n_points);
  const double dxs = st.signal_grid().dx();
  double fid = 0.0;
  for (std::size_t j = 0; j < nm; ++j) {
    complex ov = 0.0;
    for (std::size_t i = 0; i < ns; ++i) {
      ov += std::conj(st.signal_in.amp[i]) * st.amp[i * nm + j];
    }
    fid += std::norm(ov * dxs);
  }
  out.mean_fidelity = fid * st.meter_grid().dx();
  return out;
}

}  // namespace qndtomo
