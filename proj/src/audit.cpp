// qndtomo: quantum-nondemolition signal/meter coupling and homodyne tomography.
// SPDX-License-Identifier: MIT
#include "audit.hpp"

#include <cmath>
#include <string>

#include "fock.hpp"

namespace qndtomo {

namespace {

constexpr double kRareOutcomeFloor = 1e-12;

fock::Matrix kron(const fock::Matrix& a, const fock::Matrix& b) {
  fock::Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double commutator_max(const fock::Matrix& u, const fock::Matrix& a) {
  return (u * a - a * u).cwiseAbs().maxCoeff();
}

}  // namespace

cvector conditioning_amplitude(const BipartiteState& state, double outcome) {
  const QuadratureGrid& gs = state.signal_grid();
  const std::size_t ns = static_cast<std::size_t>(gs.n_points);
  const double a = state.coupling.kappa * std::sin(state.coupling.delta());
  const cvector meter_vals =
      evaluate_uniform(state.meter_in, outcome - a * gs.x_min, -a * gs.dx(), ns);
  cvector y(ns);
  for (std::size_t i = 0; i < ns; ++i) {
    const double xs = gs.x(static_cast<int>(i));
    y[i] = meter_vals[i] *
           std::exp(complex{0.0, -entangling_phase(state.coupling, xs, outcome)});
  }
  return y;
}

ReadoutLawAudit audit_readout_law(const BipartiteState& state, double outcome) {
  const QuadratureGrid& gs = state.signal_grid();
  const QuadratureGrid& gm = state.meter_grid();
  const std::size_t ns = static_cast<std::size_t>(gs.n_points);
  const std::size_t nm = static_cast<std::size_t>(gm.n_points);

  ReadoutLawAudit audit;

  // Joint amplitude = signal amplitude x conditioning amplitude, column by
  // column over the whole meter grid.
  for (std::size_t j = 0; j < nm; ++j) {
    const cvector y = conditioning_amplitude(state, gm.x(static_cast<int>(j)));
    for (std::size_t i = 0; i < ns; ++i) {
      audit.factorization_residual =
          std::max(audit.factorization_residual,
                   std::abs(state.at(static_cast<int>(i), static_cast<int>(j)) -
                            state.signal_in.amp[i] * y[i]));
    }
  }

  // Conditional density law at the audited outcome.
  const ConditionalResult cond = condition_on_outcome(state, outcome);
  const cvector y = conditioning_amplitude(state, outcome);
  for (std::size_t i = 0; i < ns; ++i) {
    const double lhs = std::norm(cond.state.amp[i]) * cond.outcome_density;
    const double rhs = std::norm(y[i]) * std::norm(state.signal_in.amp[i]);
    audit.density_residual =
        std::max(audit.density_residual, std::abs(lhs - rhs));
  }

  const rvector w = meter_distribution(state);
  double mass = 0.0;
  for (double v : w) mass += v;
  audit.readout_mass_error = std::abs(mass * gm.dx() - 1.0);
  return audit;
}

InvarianceCheck qnd_invariance_check(const CouplingSettings& coupling,
                                     int dim) {
  coupling.validate();
  if (dim < 2 || dim > 32) {
    fail(ErrorCode::invalid_argument,
         "invariance check dimension must be in [2, 32], got " +
             std::to_string(dim));
  }
  const double theta_s = coupling.signal_angle();
  const fock::Matrix xs = fock::quadrature(dim, theta_s);
  const fock::Matrix ps = fock::quadrature(dim, theta_s + 0.5 * kPi);
  const fock::Matrix xm = fock::quadrature(dim, coupling.pump_phase);
  const fock::Matrix eye = fock::Matrix::Identity(dim, dim);

  // U = exp(+i kappa X_s (x) X_m) = hermitian_evolution(X_s (x) X_m, -kappa).
  const fock::Matrix u = fock::hermitian_evolution(kron(xs, xm), -coupling.kappa);

  InvarianceCheck check;
  check.monitored_residual = commutator_max(u, kron(xs, eye));
  check.conjugate_residual = commutator_max(u, kron(ps, eye));
  return check;
}

InformationAudit information_audit(const BipartiteState& state) {
  const QuadratureGrid& gs = state.signal_grid();
  const QuadratureGrid& gm = state.meter_grid();
  const std::size_t ns = static_cast<std::size_t>(gs.n_points);
  const std::size_t nm = static_cast<std::size_t>(gm.n_points);
  const double dxs = gs.dx();
  const double dxm = gm.dx();

  // Joint probability mass function and its marginals.
  rvector pmf(ns * nm);
  rvector px(ns, 0.0);
  rvector py(nm, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t j = 0; j < nm; ++j) {
      const double m = std::norm(state.amp[i * nm + j]) * dxs * dxm;
      pmf[i * nm + j] = m;
      total += m;
    }
  }
  if (total <= 0.0) {
    fail(ErrorCode::internal, "joint state has no probability mass");
  }
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t j = 0; j < nm; ++j) {
      pmf[i * nm + j] /= total;
      px[i] += pmf[i * nm + j];
      py[j] += pmf[i * nm + j];
    }
  }

  InformationAudit audit;
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t j = 0; j < nm; ++j) {
      const double p = pmf[i * nm + j];
      if (p < 1e-300) continue;
      audit.mutual_information += p * std::log(p / (px[i] * py[j]));
    }
  }

  const rvector prior = probability_density(state.signal_in);
  double included_mass = 0.0;
  double weighted_tv = 0.0;
  for (std::size_t j = 0; j < nm; ++j) {
    const double w = py[j] / dxm;  // readout density at xbar_j
    if (w < kRareOutcomeFloor) continue;
    double tv = 0.0;
    for (std::size_t i = 0; i < ns; ++i) {
      const double cond_density = pmf[i * nm + j] / (py[j] * dxs);
      tv += std::abs(cond_density - prior[i]);
    }
    tv *= 0.5 * dxs;
    audit.max_disturbance = std::max(audit.max_disturbance, tv);
    weighted_tv += tv * py[j];
    included_mass += py[j];
  }
  if (included_mass > 0.0) audit.mean_disturbance = weighted_tv / included_mass;
  return audit;
}

}  // namespace qndtomo
