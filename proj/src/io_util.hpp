// qndtomo: quantum-nondemolition signal/meter coupling and homodyne tomography.
// SPDX-License-Identifier: MIT
#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "tomography.hpp"

namespace qndtomo::io {

// Numeric cell formatting used by every writer: 12 significant digits,
// scientific ("%.11e"), enough to round-trip reconstruction-grade data.
std::string format_cell(double v);

// Equal-length columns under a header row. Throws ErrorCode::io on any
// filesystem failure, ErrorCode::invalid_argument on ragged input.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<rvector>& columns);

// Long-form x,p,value rows.
void write_wigner_csv(const std::string& path, const WignerFunction& w);

// Long-form pump_phase,x,density rows for a whole scan.
void write_marginals_csv(const std::string& path,
                         const std::vector<PhaseMarginal>& scan);

// JSON file round-trip; parse errors surface as ErrorCode::config with the
// parser's position message, filesystem errors as ErrorCode::io.
nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

// Creates the directory (and parents) if missing; ErrorCode::io on failure
// or if the path exists as a non-directory.
void ensure_directory(const std::string& path);

}  // namespace qndtomo::io
