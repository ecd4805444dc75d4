// qndtomo: quantum-nondemolition signal/meter coupling and homodyne tomography.
// SPDX-License-Identifier: MIT
#include "scenario.hpp"

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <string>

#include "audit.hpp"
#include "fock.hpp"
#include "io_util.hpp"
#include "rotation.hpp"
#include "states.hpp"
#include "tomography.hpp"
#include "wigner.hpp"

namespace qndtomo {

namespace {

using nlohmann::json;

[[noreturn]] void config_fail(const std::string& key, const std::string& what) {
  fail(ErrorCode::config, "config key '" + key + "': " + what);
}

// Typed, path-aware accessors over one JSON object; every complaint names
// the full dotted key it refers to.
class ConfigView {
 public:
  ConfigView(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) config_fail(path_.empty() ? "<root>" : path_, "must be a JSON object");
  }

  std::string key_path(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }
  bool has(const std::string& key) const { return j_.contains(key); }

  double number(const std::string& key) const {
    require(key);
    return as_number(key);
  }
  double number_or(const std::string& key, double fallback) const {
    return has(key) ? as_number(key) : fallback;
  }
  long long integer(const std::string& key) const {
    require(key);
    return as_integer(key);
  }
  long long integer_or(const std::string& key, long long fallback) const {
    return has(key) ? as_integer(key) : fallback;
  }
  std::string str(const std::string& key) const {
    require(key);
    if (!j_.at(key).is_string()) config_fail(key_path(key), "must be a string");
    return j_.at(key).get<std::string>();
  }
  std::string str_or(const std::string& key, std::string fallback) const {
    return has(key) ? str(key) : std::move(fallback);
  }
  ConfigView object(const std::string& key) const {
    require(key);
    return ConfigView(j_.at(key), key_path(key));
  }

  // Rejects typos: every present key must be in the allowed list.
  void allow_only(std::initializer_list<const char*> keys) const {
    for (const auto& item : j_.items()) {
      bool known = false;
      for (const char* k : keys) {
        if (item.key() == k) known = true;
      }
      if (!known) config_fail(key_path(item.key()), "is not a recognized key");
    }
  }

 private:
  void require(const std::string& key) const {
    if (!has(key)) config_fail(key_path(key), "is required");
  }
  double as_number(const std::string& key) const {
    if (!j_.at(key).is_number()) config_fail(key_path(key), "must be a number");
    return j_.at(key).get<double>();
  }
  long long as_integer(const std::string& key) const {
    if (!j_.at(key).is_number_integer()) {
      config_fail(key_path(key), "must be an integer");
    }
    return j_.at(key).get<long long>();
  }

  const json& j_;
  std::string path_;
};

QuadratureGrid parse_grid(const ConfigView& parent, const std::string& key,
                          const QuadratureGrid& fallback) {
  if (!parent.has(key)) return fallback;
  const ConfigView g = parent.object(key);
  g.allow_only({"min", "max", "points"});
  QuadratureGrid grid{g.number("min"), g.number("max"),
                      static_cast<int>(g.integer("points"))};
  try {
    grid.validate();
  } catch (const Error& e) {
    config_fail(parent.key_path(key), e.what());
  }
  return grid;
}

Wavefunction build_state(const ConfigView& parent, const std::string& key,
                         const QuadratureGrid& grid, double angle) {
  if (!parent.has(key)) {
    // Meter defaults to vacuum; the signal is made required by callers.
    return make_vacuum(grid, angle);
  }
  const ConfigView spec = parent.object(key);
  const std::string kind = spec.str("kind");
  try {
    if (kind == "vacuum") {
      spec.allow_only({"kind"});
      return make_vacuum(grid, angle);
    }
    if (kind == "coherent") {
      spec.allow_only({"kind", "x0", "p0"});
      return make_coherent(grid, angle, spec.number_or("x0", 0.0),
                           spec.number_or("p0", 0.0));
    }
    if (kind == "fock") {
      spec.allow_only({"kind", "n"});
      return make_fock(grid, angle, static_cast<int>(spec.integer("n")));
    }
    if (kind == "squeezed") {
      spec.allow_only({"kind", "r", "phase"});
      return make_squeezed_vacuum(
          grid, angle, SqueezeSpec{spec.number("r"), spec.number_or("phase", 0.0)});
    }
    if (kind == "cat") {
      spec.allow_only({"kind", "separation"});
      return make_even_cat(grid, angle, spec.number("separation"));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::config) throw;
    // Construction rejected the configured parameters (grid too coarse,
    // state sticking out of the window, ...): still a config problem.
    config_fail(parent.key_path(key), e.what());
  }
  config_fail(spec.key_path("kind"), "unknown state kind '" + kind + "'");
}

std::uint64_t parse_seed(const ConfigView& root) {
  const long long seed = root.integer_or("seed", 1);
  if (seed < 0) config_fail("seed", "must be non-negative");
  return static_cast<std::uint64_t>(seed);
}

json config_echo(const json& config) {
  json echo = config;
  echo.erase("out_dir");
  return echo;
}

// --- identity-check helpers --------------------------------------------------

double sup_diff(const cvector& a, const cvector& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

double sup_diff(const rvector& a, const rvector& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

double sup_diff(const fock::Vector& a, const fock::Vector& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// --- scenario handlers -------------------------------------------------------

// Collects artifact writes; the directory is only created once a handler
// actually writes, so rejected configs leave nothing behind.
struct RunContext {
  std::string out_dir;
  std::vector<std::string> files;

  void write_csv(const std::string& name,
                 const std::vector<std::string>& header,
                 const std::vector<rvector>& columns) {
    io::ensure_directory(out_dir);
    io::write_csv(out_dir + "/" + name, header, columns);
    files.push_back(name);
  }
  void write_wigner(const std::string& name, const WignerFunction& w) {
    io::ensure_directory(out_dir);
    io::write_wigner_csv(out_dir + "/" + name, w);
    files.push_back(name);
  }
  void write_marginals(const std::string& name,
                       const std::vector<PhaseMarginal>& scan) {
    io::ensure_directory(out_dir);
    io::write_marginals_csv(out_dir + "/" + name, scan);
    files.push_back(name);
  }
};

json coupled_conditioning_report(RunContext& ctx, const BipartiteState& st,
                                 double outcome) {
  const rvector readout = meter_distribution(st);
  ctx.write_csv("readout.csv", {"xbar", "density"},
                {st.meter_grid().points(), readout});

  const ConditionalResult cond = condition_on_outcome(st, outcome);
  const rvector input_density = probability_density(st.signal_in);
  const rvector cond_density = probability_density(cond.state);
  ctx.write_csv("conditional.csv",
                {"x", "input_density", "conditional_density"},
                {st.signal_grid().points(), input_density, cond_density});

  const Moments readout_moments =
      mean_and_variance(st.meter_grid(), readout);
  const InformationAudit info = information_audit(st);
  json results;
  results["readout_mean"] = readout_moments.mean;
  results["readout_variance"] = readout_moments.variance;
  results["outcome"] = outcome;
  results["outcome_density"] = cond.outcome_density;
  results["conditional_tv_from_input"] = total_variation_distance(
      cond_density, input_density, st.signal_grid().dx());
  results["mutual_information"] = info.mutual_information;
  results["mean_disturbance"] = info.mean_disturbance;
  results["max_disturbance"] = info.max_disturbance;
  return results;
}

constexpr double kInPhaseTolerance = 1e-3;

json run_coupled_scenario(const ConfigView& root, const std::string& kind,
                          RunContext& ctx) {
  root.allow_only({"scenario", "out_dir", "seed", "signal", "meter", "kappa",
                   "pump_phase", "homodyne_angle", "grid", "meter_grid",
                   "outcome", "dim"});
  if (kind != "qnd_audit" && root.has("dim")) {
    config_fail("dim", "is only used by the qnd_audit scenario");
  }
  CouplingSettings coupling;
  coupling.kappa = root.number_or("kappa", 1.0);
  coupling.pump_phase = root.number_or("pump_phase", 0.0);
  const double default_homodyne =
      kind == "in_phase" ? coupling.pump_phase
                         : coupling.pump_phase + 0.5 * kPi;
  coupling.homodyne_angle = root.number_or("homodyne_angle", default_homodyne);
  try {
    coupling.validate();
  } catch (const Error& e) {
    config_fail("kappa", e.what());
  }
  if (kind == "in_phase" &&
      std::abs(std::sin(coupling.delta())) > kInPhaseTolerance) {
    config_fail("homodyne_angle",
                "in_phase scenario requires homodyne_angle = pump_phase "
                "(mod pi)");
  }

  const QuadratureGrid grid =
      parse_grid(root, "grid", QuadratureGrid{-8.0, 8.0, 512});
  // The readout window must hold the meter displaced by kappa*sin(delta)*x_s
  // across the whole signal window, so it defaults to twice the signal span
  // (same grid step).
  const QuadratureGrid meter_grid =
      parse_grid(root, "meter_grid", QuadratureGrid{-16.0, 16.0, 1024});
  if (!root.has("signal")) config_fail("signal", "is required");
  const Wavefunction signal =
      build_state(root, "signal", grid, coupling.signal_angle());
  const Wavefunction meter =
      build_state(root, "meter", meter_grid, coupling.homodyne_angle);

  const BipartiteState st = entangle(signal, meter, coupling);
  json results =
      coupled_conditioning_report(ctx, st, root.number_or("outcome", 0.0));

  if (kind == "qnd_audit") {
    const double outcome = root.number_or("outcome", 0.0);
    const ReadoutLawAudit law = audit_readout_law(st, outcome);
    const int dim = static_cast<int>(root.integer_or("dim", 16));
    const InvarianceCheck inv = qnd_invariance_check(coupling, dim);
    results["factorization_residual"] = law.factorization_residual;
    results["density_residual"] = law.density_residual;
    results["readout_mass_error"] = law.readout_mass_error;
    results["monitored_residual"] = inv.monitored_residual;
    results["conjugate_residual"] = inv.conjugate_residual;
    json pass;
    pass["conditioning_law"] = law.factorization_residual < 1e-6 &&
                               law.density_residual < 1e-6 &&
                               law.readout_mass_error < 1e-6;
    pass["invariance"] = inv.monitored_residual < 1e-9;
    results["pass"] = pass;
  }
  return results;
}

json run_weak_scenario(const ConfigView& root, RunContext& ctx) {
  root.allow_only({"scenario", "out_dir", "seed", "signal", "meter", "kappa",
                   "pump_phase", "homodyne_angle", "grid", "meter_grid",
                   "shots"});
  CouplingSettings coupling;
  coupling.kappa = root.number_or("kappa", 0.2);
  coupling.pump_phase = root.number_or("pump_phase", 0.0);
  coupling.homodyne_angle =
      root.number_or("homodyne_angle", coupling.pump_phase + 0.5 * kPi);
  try {
    coupling.validate();
  } catch (const Error& e) {
    config_fail("kappa", e.what());
  }

  const QuadratureGrid grid =
      parse_grid(root, "grid", QuadratureGrid{-8.0, 8.0, 512});
  const QuadratureGrid meter_grid =
      parse_grid(root, "meter_grid", QuadratureGrid{-24.0, 24.0, 1024});
  if (!root.has("signal")) config_fail("signal", "is required");
  const Wavefunction signal =
      build_state(root, "signal", grid, coupling.signal_angle());
  const Wavefunction meter =
      build_state(root, "meter", meter_grid, coupling.homodyne_angle);

  const long long shots = root.integer_or("shots", 20000);
  if (shots < 1 || shots > 100000000) {
    config_fail("shots", "must be in [1, 1e8]");
  }
  const WeakMeasurementResult r = weak_measurement_estimate(
      signal, meter, coupling, static_cast<int>(shots), parse_seed(root));

  const Moments true_moments = mean_and_variance(signal);
  json results;
  results["estimate"] = r.estimate;
  results["std_error"] = r.std_error;
  results["mean_fidelity"] = r.mean_fidelity;
  results["n_samples"] = r.n_samples;
  results["true_mean"] = true_moments.mean;
  results["deviation_sigmas"] =
      std::abs(r.estimate - true_moments.mean) / r.std_error;
  (void)ctx;
  return results;
}

json run_tomography_scenario(const ConfigView& root, RunContext& ctx) {
  root.allow_only({"scenario", "out_dir", "seed", "signal", "kappa",
                   "squeeze_r", "grid", "phases", "shots", "bin_width",
                   "recon_grid"});
  const QuadratureGrid grid =
      parse_grid(root, "grid", QuadratureGrid{-8.0, 8.0, 1024});
  if (!root.has("signal")) config_fail("signal", "is required");
  // Tomography states are specified in the x(0) frame; the scan rotates.
  const Wavefunction signal = build_state(root, "signal", grid, 0.0);

  const double kappa = root.number_or("kappa", 1.0);
  const double squeeze_r = root.number_or("squeeze_r", 1.0);
  const long long phases = root.integer_or("phases", 24);
  const long long shots = root.integer_or("shots", 20000);
  const double bin_width = root.number_or("bin_width", 0.15);
  if (phases < 1 || phases > 4096) config_fail("phases", "must be in [1, 4096]");
  if (shots < 100 || shots > 100000000) {
    config_fail("shots", "must be in [100, 1e8]");
  }
  const QuadratureGrid recon =
      parse_grid(root, "recon_grid", QuadratureGrid{-6.0, 6.0, 241});

  const std::vector<PhaseMarginal> exact =
      scan_marginals(signal, static_cast<int>(phases), squeeze_r, kappa);
  ctx.write_marginals("marginals_exact.csv", exact);

  const std::vector<PhaseMarginal> sampled = scan_marginals_sampled(
      signal, static_cast<int>(phases), squeeze_r, kappa,
      static_cast<int>(shots), parse_seed(root), bin_width);
  ctx.write_marginals("marginals_sampled.csv", sampled);

  const WignerFunction fbp = reconstruct_wigner(sampled, recon, recon);
  ctx.write_wigner("wigner_fbp.csv", fbp);
  const WignerFunction direct = wigner_transform(signal);
  ctx.write_wigner("wigner_direct.csv", direct);

  double mass = 0.0;
  double min_value = 0.0;
  for (double v : fbp.values) {
    mass += v;
    min_value = std::min(min_value, v);
  }
  mass *= recon.dx() * recon.dx();
  const int i0 = static_cast<int>(
      std::lround(-recon.x_min / recon.dx()));
  json results;
  results["fbp_origin"] = fbp.at(i0, i0);
  results["fbp_mass"] = mass;
  results["fbp_min"] = min_value;
  results["phases"] = phases;
  results["shots_per_phase"] = shots;
  return results;
}

}  // namespace

Wavefunction state_from_json(const nlohmann::json& spec) {
  const ConfigView root(spec, "");
  root.allow_only({"grid", "angle", "state"});
  const QuadratureGrid grid =
      parse_grid(root, "grid", QuadratureGrid{-8.0, 8.0, 512});
  const double angle = root.number_or("angle", 0.0);
  if (!root.has("state")) config_fail("state", "is required");
  return build_state(root, "state", grid, angle);
}

std::vector<IdentityCheck> run_identity_checks() {
  std::vector<IdentityCheck> checks;
  const auto add = [&](std::string name, double residual, double threshold) {
    IdentityCheck c;
    c.name = std::move(name);
    c.residual = residual;
    c.threshold = threshold;
    c.pass = residual < threshold;
    checks.push_back(std::move(c));
  };

  const QuadratureGrid g512{-8.0, 8.0, 512};

  // Rotation group laws on a structured superposition. The window is kept
  // generous (+-10) because the wide axis of the squeezed component must
  // stay far from the grid edge through every intermediate orientation.
  const QuadratureGrid g_rot{-10.0, 10.0, 640};
  Wavefunction mix = make_coherent(g_rot, 0.0, 0.9, -0.4);
  {
    const Wavefunction sq =
        make_squeezed_vacuum(g_rot, 0.0, SqueezeSpec{0.5, 0.5});
    for (std::size_t i = 0; i < mix.amp.size(); ++i) {
      mix.amp[i] += 0.6 * sq.amp[i];
    }
    mix.normalize();
  }
  add("rotation_composition",
      sup_diff(rotate_representation(rotate_representation(mix, 0.7), 1.8).amp,
               rotate_representation(mix, 1.8).amp),
      1e-7);
  add("rotation_inverse",
      sup_diff(rotate_representation(rotate_representation(mix, 2.3), 0.0).amp,
               mix.amp),
      1e-7);
  add("quarter_turn_is_fourier",
      sup_diff(rotate_representation(make_coherent(g512, 0.0, 1.0, 0.5),
                                     0.5 * kPi)
                   .amp,
               make_coherent(g512, 0.5 * kPi, 0.5, -1.0).amp),
      1e-7);

  // Number-basis operator identities.
  {
    const int dim = 96;
    const complex alpha{0.7, 0.2};
    const complex beta{-0.3, 0.5};
    const fock::Vector lhs =
        fock::displacement(dim, alpha) *
        (fock::displacement(dim, beta) * fock::vacuum_state(dim));
    const complex phase =
        std::exp(kI * std::imag(alpha * std::conj(beta)));
    const fock::Vector rhs =
        phase * (fock::displacement(dim, alpha + beta) *
                 fock::vacuum_state(dim));
    add("glauber_composition", sup_diff(lhs, rhs), 1e-9);

    const double q = 0.9;
    const double theta = 0.6;
    const fock::Vector kicked =
        fock::hermitian_evolution(fock::quadrature(dim, theta), q) *
        fock::vacuum_state(dim);
    const fock::Vector displaced =
        fock::displacement(dim, -kI * q * std::exp(kI * theta) /
                                    std::sqrt(2.0)) *
        fock::vacuum_state(dim);
    add("kick_is_displacement", sup_diff(kicked, displaced), 1e-9);

    add("coupling_kick_factorization",
        fock::kick_factorization_residual(dim, 0.8, 0.9, 0.35), 1e-8);
    add("displaced_probe_response",
        fock::displaced_probe_residual(dim, 0.8, 0.9, 0.35, 0.6), 1e-8);
  }

  // Coupling invariance at operator level.
  {
    CouplingSettings c;
    c.kappa = 0.8;
    c.pump_phase = 0.4;
    c.homodyne_angle = 1.3;
    add("qnd_invariance", qnd_invariance_check(c, 16).monitored_residual,
        1e-10);
  }

  // Grid coupling vs number-basis oracle, and conditioning identities, at a
  // generic operating point.
  {
    CouplingSettings c;
    c.kappa = 0.9;
    c.pump_phase = 0.4;
    c.homodyne_angle = 1.1;
    const QuadratureGrid g{-8.0, 8.0, 256};
    const Wavefunction sig = make_coherent(g, c.signal_angle(), 0.4, 0.25);
    const Wavefunction met =
        make_squeezed_vacuum(g, c.homodyne_angle, SqueezeSpec{0.5, 0.9});
    const BipartiteState st = entangle(sig, met, c);

    const int dim = 96;
    const complex alpha = (complex{0.4, 0.25}) *
                          std::exp(kI * c.signal_angle()) / std::sqrt(2.0);
    const fock::BipartiteFock joint = fock::qnd_evolution(
        fock::coherent_state(dim, alpha), fock::squeezed_state(dim, 0.5, 0.9),
        -c.kappa, c.signal_angle(), c.pump_phase);
    const fock::Matrix projected =
        fock::project_joint(joint, g, c.signal_angle(), g, c.homodyne_angle);
    double worst = 0.0;
    for (int i = 0; i < g.n_points; ++i) {
      for (int j = 0; j < g.n_points; ++j) {
        worst = std::max(worst, std::abs(st.at(i, j) - projected(i, j)));
      }
    }
    add("joint_amplitude_cross_check", worst, 1e-7);

    const WignerFunction direct =
        wigner_transform(condition_on_outcome(st, 0.6).state);
    const WignerFunction filtered = conditional_wigner_via_filter(st, 0.6);
    add("conditional_filter_convolution",
        sup_diff(direct.values, filtered.values), 1e-10);
  }

  // In-phase coupling carries no signal information.
  {
    CouplingSettings c;
    c.kappa = 1.0;
    c.pump_phase = 0.3;
    c.homodyne_angle = 0.3;
    const QuadratureGrid g{-8.0, 8.0, 256};
    const BipartiteState st =
        entangle(make_coherent(g, c.signal_angle(), 0.8, -0.3),
                 make_vacuum(g, c.homodyne_angle), c);
    add("in_phase_no_information",
        std::abs(information_audit(st).mutual_information), 1e-10);
  }

  // Wigner transform projects back onto the position density.
  {
    const QuadratureGrid g511{-8.0, 8.0, 511};
    const Wavefunction cat = make_even_cat(g511, 0.0, 2.5);
    add("wigner_marginal_projection",
        sup_diff(wigner_x_marginal(wigner_transform(cat)),
                 probability_density(cat)),
        1e-10);
  }

  return checks;
}

nlohmann::json identity_checks_to_json(
    const std::vector<IdentityCheck>& checks) {
  json arr = json::array();
  for (const IdentityCheck& c : checks) {
    json item;
    item["name"] = c.name;
    item["residual"] = c.residual;
    item["threshold"] = c.threshold;
    item["pass"] = c.pass;
    arr.push_back(std::move(item));
  }
  return arr;
}

ScenarioOutcome run_scenario(const nlohmann::json& config,
                             const std::string& out_dir_override) {
  const ConfigView root(config, "");
  const std::string scenario = root.str("scenario");
  const std::string out_dir = out_dir_override.empty()
                                  ? root.str_or("out_dir", "qndtomo_out")
                                  : out_dir_override;

  RunContext ctx;
  ctx.out_dir = out_dir;

  json results;
  if (scenario == "in_phase" || scenario == "out_of_phase" ||
      scenario == "qnd_audit") {
    results = run_coupled_scenario(root, scenario, ctx);
  } else if (scenario == "weak") {
    results = run_weak_scenario(root, ctx);
  } else if (scenario == "tomography") {
    results = run_tomography_scenario(root, ctx);
  } else if (scenario == "identity_checks") {
    root.allow_only({"scenario", "out_dir"});
    const std::vector<IdentityCheck> checks = run_identity_checks();
    bool all = true;
    for (const IdentityCheck& c : checks) all = all && c.pass;
    results["checks"] = identity_checks_to_json(checks);
    results["all_pass"] = all;
  } else {
    config_fail("scenario", "unknown scenario '" + scenario + "'");
  }

  ScenarioOutcome outcome;
  outcome.manifest["tool"] = "qndtomo";
  outcome.manifest["version"] = kVersionString;
  outcome.manifest["scenario"] = scenario;
  outcome.manifest["config"] = config_echo(config);
  outcome.manifest["results"] = results;
  ctx.files.push_back("manifest.json");
  outcome.manifest["outputs"] = ctx.files;
  io::ensure_directory(out_dir);
  io::write_json_file(out_dir + "/manifest.json", outcome.manifest);
  outcome.files_written = ctx.files;
  return outcome;
}

}  // namespace qndtomo
