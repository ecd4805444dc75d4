// qndtomo: quantum-nondemolition signal/meter coupling and homodyne tomography.
// SPDX-License-Identifier: MIT
#pragma once

#include "grid.hpp"

namespace qndtomo {

// Re-expresses psi in the rotated quadrature representation `new_angle`.
// Implements the fractional Fourier transform generated by the number
// operator: amp_new = <x(new_angle)|psi> given amp = <x(old_angle)|psi>.
// A rotation by pi/2 is the ordinary Fourier transform with kernel
// (2*pi)^{-1/2} e^{-i*x*y}; a rotation by pi is the parity flip x -> -x.
//
// Requires a symmetric grid. Throws ErrorCode::grid_resolution when the
// chirp factors of the requested rotation cannot be sampled without aliasing
// on this grid (the rotation is then split into two sub-rotations first; the
// error fires only if even the split plan would alias).
Wavefunction rotate_representation(const Wavefunction& psi, double new_angle);

}  // namespace qndtomo
