// qndtomo: quantum-nondemolition signal/meter coupling and homodyne tomography.
// SPDX-License-Identifier: MIT
#include "common.hpp"

#include <cmath>

namespace qndtomo {

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

double wrap_angle(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w;
}

double wrap_symmetric(double a) {
  double w = std::remainder(a, kTwoPi);  // (-pi, pi]
  if (w <= -kPi) w = kPi;                // remainder may return -pi exactly
  return w;
}

bool same_angle(double a, double b, double tol) {
  return std::abs(wrap_symmetric(a - b)) <= tol;
}

}  // namespace qndtomo
