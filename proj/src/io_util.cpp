// qndtomo: quantum-nondemolition signal/meter coupling and homodyne tomography.
// SPDX-License-Identifier: MIT
#include "io_util.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace qndtomo::io {

std::string format_cell(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.11e", v);
  return buf;
}

namespace {

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    fail(ErrorCode::io, "cannot open '" + path + "' for writing");
  }
  return out;
}

void finish_write(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) {
    fail(ErrorCode::io, "write to '" + path + "' failed");
  }
}

}  // namespace

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<rvector>& columns) {
  if (header.size() != columns.size() || columns.empty()) {
    fail(ErrorCode::invalid_argument,
         "csv needs one header per column and at least one column");
  }
  const std::size_t rows = columns.front().size();
  for (const rvector& c : columns) {
    if (c.size() != rows) {
      fail(ErrorCode::invalid_argument, "csv columns have unequal lengths");
    }
  }
  std::ofstream out = open_for_write(path);
  for (std::size_t c = 0; c < header.size(); ++c) {
    out << (c ? "," : "") << header[c];
  }
  out << '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      out << (c ? "," : "") << format_cell(columns[c][r]);
    }
    out << '\n';
  }
  finish_write(out, path);
}

void write_wigner_csv(const std::string& path, const WignerFunction& w) {
  std::ofstream out = open_for_write(path);
  out << "x,p,wigner\n";
  const int np = w.p_grid.n_points;
  for (int i = 0; i < w.x_grid.n_points; ++i) {
    for (int l = 0; l < np; ++l) {
      out << format_cell(w.x_grid.x(i)) << ',' << format_cell(w.p_grid.x(l))
          << ',' << format_cell(w.at(i, l)) << '\n';
    }
  }
  finish_write(out, path);
}

void write_marginals_csv(const std::string& path,
                         const std::vector<PhaseMarginal>& scan) {
  std::ofstream out = open_for_write(path);
  out << "pump_phase,x,density\n";
  for (const PhaseMarginal& m : scan) {
    for (int j = 0; j < m.grid.n_points; ++j) {
      out << format_cell(m.pump_phase) << ',' << format_cell(m.grid.x(j))
          << ',' << format_cell(m.density[static_cast<std::size_t>(j)])
          << '\n';
    }
  }
  finish_write(out, path);
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    fail(ErrorCode::io, "cannot open '" + path + "' for reading");
  }
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::config, "malformed JSON in '" + path + "': " + e.what());
  }
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out = open_for_write(path);
  out << j.dump(2) << '\n';
  finish_write(out, path);
}

void ensure_directory(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec || !std::filesystem::is_directory(path)) {
    fail(ErrorCode::io, "cannot create directory '" + path + "'");
  }
}

}  // namespace qndtomo::io
