// qndtomo: quantum-nondemolition signal/meter coupling and homodyne tomography.
// SPDX-License-Identifier: MIT
#pragma once

#include "qnd.hpp"

namespace qndtomo {

// Conditioning amplitude Y(x_s_i | xbar) = psi_m(xbar - a x_s_i) e^{-i gamma}:
// the factor the readout multiplies onto the signal wavefunction before
// normalization. Exposed so the conditioning law can be audited term by term.
cvector conditioning_amplitude(const BipartiteState& state, double outcome);

struct ReadoutLawAudit {
  // sup_ij |Psi(i,j) - psi_s(i) Y(i | xbar_j)|: the joint state really is
  // signal amplitude times conditioning amplitude.
  double factorization_residual = 0.0;
  // sup_i | |psi_c(i)|^2 W - |Y(i)|^2 |psi_s(i)|^2 | at the audited outcome:
  // conditional density = amplitude-squared times prior over readout density.
  double density_residual = 0.0;
  // |sum_j W(xbar_j) dxbar - 1|: the readout really is a probability density.
  double readout_mass_error = 0.0;
};

// Verifies the announced conditioning law on the discrete grids.
ReadoutLawAudit audit_readout_law(const BipartiteState& state, double outcome);

struct InvarianceCheck {
  // ||[U, X_s (x) I]||max in a truncated number basis: zero to rounding for
  // every kappa and angle choice — the monitored quadrature is a constant of
  // the coupling.
  double monitored_residual = 0.0;
  // ||[U, P_s (x) I]||max for the conjugate quadrature: nonzero (order
  // kappa) — the back-action lands entirely in the conjugate.
  double conjugate_residual = 0.0;
};

// Operator-level check, independent of any grid discretization. dim is the
// number-basis truncation (2..32; the coupling acts on dim^2 x dim^2).
InvarianceCheck qnd_invariance_check(const CouplingSettings& coupling,
                                     int dim);

struct InformationAudit {
  // Mutual information (nats) between the signal slot and the readout slot
  // of |Psi|^2. Zero (to rounding) exactly when delta = 0: the in-phase
  // readout carries no signal information.
  double mutual_information = 0.0;
  // Readout-averaged total-variation distance between the conditional
  // signal density and the input signal density.
  double mean_disturbance = 0.0;
  // Worst disturbance over outcomes with readout density >= 1e-12.
  double max_disturbance = 0.0;
};

InformationAudit information_audit(const BipartiteState& state);

}  // namespace qndtomo
