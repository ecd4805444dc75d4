// qndtomo: quantum-nondemolition signal/meter coupling and homodyne tomography.
// SPDX-License-Identifier: MIT
#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "qnd.hpp"

namespace qndtomo {

// One self-contained numerical identity with its fixed fixture: residual
// against a frozen threshold. These are the checks `qndtomo check` runs.
struct IdentityCheck {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

// Runs the full identity suite (rotation group laws, number-basis operator
// identities, grid-vs-oracle coupling cross-check, Wigner/conditioning
// identities). Deterministic, no files written, a few seconds.
std::vector<IdentityCheck> run_identity_checks();

nlohmann::json identity_checks_to_json(const std::vector<IdentityCheck>& checks);

// Builds one single-mode state from a JSON spec of the form
//   {"grid":  {"min": -8, "max": 8, "points": 512},   (optional, default
//                                                      shown)
//    "angle": 0.0,                                    (optional, default 0)
//    "state": {"kind": "coherent", "x0": 1.0}}        (required)
// Malformed specs throw ErrorCode::config naming the offending key.
Wavefunction state_from_json(const nlohmann::json& spec);

struct ScenarioOutcome {
  nlohmann::json manifest;
  std::vector<std::string> files_written;  // relative to out_dir
};

// Parses and runs one scenario config. Recognized scenarios:
//   in_phase        coupling with delta = 0: readout + conditioning audit
//   out_of_phase    coupling with delta = pi/2 by default: readout +
//                   conditioning
//   weak            weak-coupling mean estimation with disturbance report
//   tomography      phase-swept homodyne sampling + filtered back-projection
//   qnd_audit       conditioning-law, invariance and information audits
//   identity_checks the identity suite, reported in the manifest
// Writes CSV artifacts and manifest.json into out_dir (created if needed).
// Malformed configs throw ErrorCode::config naming the offending key.
ScenarioOutcome run_scenario(const nlohmann::json& config,
                             const std::string& out_dir_override = "");

}  // namespace qndtomo
