// qndtomo: quantum-nondemolition signal/meter coupling and homodyne tomography.
// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>

#include "grid.hpp"

namespace qndtomo {

// Settings of one back-action-evading coupling + homodyne readout.
//
// The interaction unitary is U = exp(+i kappa X_s(pump_phase + pi/2) (x)
// X_m(pump_phase)); the sign makes the meter readout mean +kappa*<x_s>. The
// meter is observed along x(homodyne_angle). delta() = homodyne_angle -
// pump_phase selects the operating point: delta = 0 leaks no signal
// information into the readout, |delta| = pi/2 reads the signal quadrature
// at full strength kappa.
struct CouplingSettings {
  double kappa = 1.0;
  double pump_phase = 0.0;
  double homodyne_angle = 0.0;

  double delta() const { return wrap_symmetric(homodyne_angle - pump_phase); }
  double signal_angle() const { return wrap_angle(pump_phase + 0.5 * kPi); }
  void validate() const;
};

// Joint signal/meter pure state after the coupling, sampled as
//   Psi(x_s_i, xbar_j) = psi_s(x_s_i) * psi_m(xbar_j - a x_s_i) * e^{-i gamma},
//   a = kappa sin(delta),
//   gamma = (kappa^2 x_s^2/4) sin(2 delta) - kappa x_s xbar cos(delta),
// with psi_s in the x(pump_phase+pi/2) representation (rows) and psi_m in
// the x(homodyne_angle) representation (columns). The rotated input copies
// are kept so conditioning can re-evaluate the exact factored form.
struct BipartiteState {
  CouplingSettings coupling;
  Wavefunction signal_in;  // representation pump_phase + pi/2
  Wavefunction meter_in;   // representation homodyne_angle
  cvector amp;             // row-major: amp[i * meter_points + j]

  const QuadratureGrid& signal_grid() const { return signal_in.grid; }
  const QuadratureGrid& meter_grid() const { return meter_in.grid; }
  complex at(int i, int j) const {
    return amp[static_cast<std::size_t>(i) *
                   static_cast<std::size_t>(meter_in.grid.n_points) +
               static_cast<std::size_t>(j)];
  }
  double norm_squared() const;
};

// The phase gamma the coupling imprints on the joint amplitude at
// (x_s, xbar): (kappa^2 x_s^2/4) sin(2 delta) - kappa x_s xbar cos(delta).
double entangling_phase(const CouplingSettings& coupling, double x_s,
                        double xbar);

// Applies the coupling. Inputs may be given at any representation angle;
// they are rotated internally (which requires symmetric grids unless already
// aligned). Throws support_overflow when the displaced meter would slide
// past its grid edge, grid_resolution when the entangling phase ramp would
// alias on the meter grid.
BipartiteState entangle(const Wavefunction& signal, const Wavefunction& meter,
                        const CouplingSettings& coupling);

// Readout density W(xbar_j) = dx_s * sum_i |Psi(i,j)|^2 on the meter grid.
rvector meter_distribution(const BipartiteState& state);

// Independent density-only route: W(xbar) = int dx_s |psi_s(x_s)|^2
// * |psi_m(xbar - a x_s)|^2. No joint state, no entangling phase; useful as
// a cross-check of the full amplitude construction.
rvector meter_distribution_densities(const Wavefunction& signal,
                                     const Wavefunction& meter,
                                     const CouplingSettings& coupling);

struct ConditionalResult {
  Wavefunction state;            // normalized, representation pump_phase+pi/2
  double outcome_density = 0.0;  // W(xbar) at the conditioning outcome
};

// Projects the meter onto the homodyne outcome xbar and returns the
// normalized conditional signal state psi_c ~ psi_s * psi_m(xbar - a x_s)
// * e^{-i gamma}. Throws rare_outcome when W(xbar) < 1e-12.
ConditionalResult condition_on_outcome(const BipartiteState& state,
                                       double outcome);

struct WeakMeasurementResult {
  double estimate = 0.0;       // estimated <x_s> from the readout samples
  double std_error = 0.0;      // statistical error of the estimate
  double mean_fidelity = 0.0;  // outcome-averaged |<psi_s|psi_c>|^2
  int n_samples = 0;
};

// Weak-coupling readout: draws homodyne samples from W(xbar), inverts the
// readout calibration <xbar> = kappa sin(delta) <x_s> + meter offset, and
// reports the outcome-averaged disturbance of the signal. Requires the
// meter readout width to dominate the geared signal spread by >= 5x
// (otherwise the coupling is not weak; invalid_argument).
WeakMeasurementResult weak_measurement_estimate(const Wavefunction& signal,
                                                const Wavefunction& meter,
                                                const CouplingSettings& coupling,
                                                int n_samples,
                                                std::uint64_t seed);

}  // namespace qndtomo
