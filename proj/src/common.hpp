// qndtomo: quantum-nondemolition signal/meter coupling and homodyne tomography.
// SPDX-License-Identifier: MIT
#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qndtomo {

using complex = std::complex<double>;
using cvector = std::vector<complex>;
using rvector = std::vector<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr complex kI{0.0, 1.0};

inline constexpr const char* kVersionString = "1.0.0";

// Broad failure categories; the C API maps each to a status code and the CLI
// to an exit code, so keep the set small and stable.
enum class ErrorCode {
  invalid_argument,  // caller passed a nonsensical value
  grid_resolution,   // step size too coarse / kernel would alias
  support_overflow,  // state or shifted state does not fit inside the grid
  rare_outcome,      // conditioning on an outcome of negligible probability
  config,            // malformed run configuration
  io,                // file read/write failure
  internal,          // invariant violated inside the library
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

// Angle wrapped into [0, 2*pi).
double wrap_angle(double a);
// Angle difference wrapped into (-pi, pi].
double wrap_symmetric(double a);
// True when two angles coincide modulo 2*pi within `tol`.
bool same_angle(double a, double b, double tol = 1e-12);

}  // namespace qndtomo
