// qndtomo: quantum-nondemolition signal/meter coupling and homodyne tomography.
// SPDX-License-Identifier: MIT
//
// C ABI shim: every entry point catches C++ exceptions at the boundary,
// stores the message in a thread-local slot, and returns a status code.
#include "qndtomo/qndtomo.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <utility>

#include "audit.hpp"
#include "common.hpp"
#include "qnd.hpp"
#include "rotation.hpp"
#include "scenario.hpp"
#include "wigner.hpp"

struct qnd_state {
  qndtomo::Wavefunction psi;
};

struct qnd_coupled {
  qndtomo::BipartiteState st;
};

namespace {

thread_local std::string g_last_error;

qnd_status map_code(qndtomo::ErrorCode code) {
  switch (code) {
    case qndtomo::ErrorCode::invalid_argument:
      return QND_ERR_INVALID_ARGUMENT;
    case qndtomo::ErrorCode::grid_resolution:
      return QND_ERR_GRID_RESOLUTION;
    case qndtomo::ErrorCode::support_overflow:
      return QND_ERR_SUPPORT_OVERFLOW;
    case qndtomo::ErrorCode::rare_outcome:
      return QND_ERR_RARE_OUTCOME;
    case qndtomo::ErrorCode::config:
      return QND_ERR_CONFIG;
    case qndtomo::ErrorCode::io:
      return QND_ERR_IO;
    case qndtomo::ErrorCode::internal:
      return QND_ERR_INTERNAL;
  }
  return QND_ERR_INTERNAL;
}

template <typename Fn>
qnd_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    g_last_error.clear();
    return QND_OK;
  } catch (const qndtomo::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QND_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unrecognized exception";
    return QND_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) qndtomo::fail(qndtomo::ErrorCode::invalid_argument, what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

double* dup_buffer(const qndtomo::rvector& v) {
  double* out = static_cast<double*>(std::malloc(v.size() * sizeof(double)));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, v.data(), v.size() * sizeof(double));
  return out;
}

nlohmann::json parse_json_text(const char* text, const char* what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    qndtomo::fail(qndtomo::ErrorCode::config,
                  std::string(what) + ": " + e.what());
  }
}

void store(double* slot, double value) {
  if (slot != nullptr) *slot = value;
}

}  // namespace

extern "C" {

const char* qnd_version(void) { return qndtomo::kVersionString; }

const char* qnd_last_error(void) { return g_last_error.c_str(); }

void qnd_string_free(char* s) { std::free(s); }

void qnd_buffer_free(double* buf) { std::free(buf); }

qnd_status qnd_run_scenario_json(const char* config_json,
                                 const char* out_dir_override,
                                 char** manifest_json_out) {
  return guarded([&] {
    require(config_json != nullptr, "config_json must not be NULL");
    require(manifest_json_out != nullptr,
            "manifest_json_out must not be NULL");
    const nlohmann::json config =
        parse_json_text(config_json, "scenario config");
    const std::string override_dir =
        out_dir_override == nullptr ? "" : out_dir_override;
    const qndtomo::ScenarioOutcome outcome =
        qndtomo::run_scenario(config, override_dir);
    *manifest_json_out = dup_string(outcome.manifest.dump(2));
  });
}

qnd_status qnd_identity_checks_json(char** report_json_out) {
  return guarded([&] {
    require(report_json_out != nullptr, "report_json_out must not be NULL");
    const std::vector<qndtomo::IdentityCheck> checks =
        qndtomo::run_identity_checks();
    bool all = true;
    for (const qndtomo::IdentityCheck& c : checks) all = all && c.pass;
    nlohmann::json report;
    report["checks"] = qndtomo::identity_checks_to_json(checks);
    report["all_pass"] = all;
    *report_json_out = dup_string(report.dump(2));
  });
}

qnd_status qnd_state_create_json(const char* spec_json, qnd_state** out) {
  return guarded([&] {
    require(spec_json != nullptr, "spec_json must not be NULL");
    require(out != nullptr, "out must not be NULL");
    const nlohmann::json spec = parse_json_text(spec_json, "state spec");
    *out = new qnd_state{qndtomo::state_from_json(spec)};
  });
}

void qnd_state_destroy(qnd_state* s) { delete s; }

qnd_status qnd_state_info(const qnd_state* s, double* x_min, double* x_max,
                          int* n_points, double* angle) {
  return guarded([&] {
    require(s != nullptr, "state handle must not be NULL");
    store(x_min, s->psi.grid.x_min);
    store(x_max, s->psi.grid.x_max);
    if (n_points != nullptr) *n_points = s->psi.grid.n_points;
    store(angle, s->psi.angle);
  });
}

qnd_status qnd_state_density(const qnd_state* s, double** density_out,
                             int* n_out) {
  return guarded([&] {
    require(s != nullptr, "state handle must not be NULL");
    require(density_out != nullptr, "density_out must not be NULL");
    require(n_out != nullptr, "n_out must not be NULL");
    const qndtomo::rvector density = qndtomo::probability_density(s->psi);
    *density_out = dup_buffer(density);
    *n_out = static_cast<int>(density.size());
  });
}

qnd_status qnd_state_rotate(const qnd_state* s, double new_angle,
                            qnd_state** out) {
  return guarded([&] {
    require(s != nullptr, "state handle must not be NULL");
    require(out != nullptr, "out must not be NULL");
    *out = new qnd_state{qndtomo::rotate_representation(s->psi, new_angle)};
  });
}

qnd_status qnd_state_wigner(const qnd_state* s, double** values_out,
                            int* nx_out, int* np_out, double* p_min_out,
                            double* dp_out) {
  return guarded([&] {
    require(s != nullptr, "state handle must not be NULL");
    require(values_out != nullptr, "values_out must not be NULL");
    require(nx_out != nullptr, "nx_out must not be NULL");
    require(np_out != nullptr, "np_out must not be NULL");
    const qndtomo::WignerFunction w = qndtomo::wigner_transform(s->psi);
    *values_out = dup_buffer(w.values);
    *nx_out = w.x_grid.n_points;
    *np_out = w.p_grid.n_points;
    store(p_min_out, w.p_grid.x_min);
    store(dp_out, w.p_grid.dx());
  });
}

qnd_status qnd_couple(const qnd_state* signal, const qnd_state* meter,
                      double kappa, double pump_phase, double homodyne_angle,
                      qnd_coupled** out) {
  return guarded([&] {
    require(signal != nullptr, "signal handle must not be NULL");
    require(meter != nullptr, "meter handle must not be NULL");
    require(out != nullptr, "out must not be NULL");
    qndtomo::CouplingSettings coupling;
    coupling.kappa = kappa;
    coupling.pump_phase = pump_phase;
    coupling.homodyne_angle = homodyne_angle;
    coupling.validate();
    *out = new qnd_coupled{
        qndtomo::entangle(signal->psi, meter->psi, coupling)};
  });
}

void qnd_coupled_destroy(qnd_coupled* c) { delete c; }

qnd_status qnd_coupled_readout(const qnd_coupled* c, double** density_out,
                               int* n_out) {
  return guarded([&] {
    require(c != nullptr, "coupled handle must not be NULL");
    require(density_out != nullptr, "density_out must not be NULL");
    require(n_out != nullptr, "n_out must not be NULL");
    const qndtomo::rvector density = qndtomo::meter_distribution(c->st);
    *density_out = dup_buffer(density);
    *n_out = static_cast<int>(density.size());
  });
}

qnd_status qnd_coupled_condition(const qnd_coupled* c, double outcome,
                                 qnd_state** conditioned_out,
                                 double* outcome_density_out) {
  return guarded([&] {
    require(c != nullptr, "coupled handle must not be NULL");
    require(conditioned_out != nullptr, "conditioned_out must not be NULL");
    qndtomo::ConditionalResult cond =
        qndtomo::condition_on_outcome(c->st, outcome);
    store(outcome_density_out, cond.outcome_density);
    *conditioned_out = new qnd_state{std::move(cond.state)};
  });
}

qnd_status qnd_coupled_information(const qnd_coupled* c,
                                   double* mutual_information,
                                   double* mean_disturbance,
                                   double* max_disturbance) {
  return guarded([&] {
    require(c != nullptr, "coupled handle must not be NULL");
    const qndtomo::InformationAudit info = qndtomo::information_audit(c->st);
    store(mutual_information, info.mutual_information);
    store(mean_disturbance, info.mean_disturbance);
    store(max_disturbance, info.max_disturbance);
  });
}

}  // extern "C"
