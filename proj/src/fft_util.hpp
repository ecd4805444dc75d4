// qndtomo: quantum-nondemolition signal/meter coupling and homodyne tomography.
// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>

#include "common.hpp"

namespace qndtomo::fftu {

std::size_t next_pow2(std::size_t n);

// In-place DFT, FFTW sign convention: forward multiplies by e^{-2*pi*i*jk/N}.
// fft_inverse includes the 1/N factor, so forward followed by inverse is the
// identity.
void fft_forward(cvector& data);
void fft_inverse(cvector& data);

// Full linear convolution: result[m] = sum_k a[k] b[m-k],
// m = 0 .. a.size()+b.size()-2. Computed with zero-padded FFTs.
cvector linear_convolution(const cvector& a, const cvector& b);

// out[l] = sum_k g[k] * exp(i*(p0 + l*dp)*(y0 + k*dy)), l = 0..count-1.
// Chirp-z factorization (Bluestein): O((K+count) log) instead of O(K*count).
// Phase arguments are reduced in long double, so large |p*y| stays accurate.
cvector czt_exponential_sum(const cvector& g, double y0, double dy, double p0,
                            double dp, std::size_t count);

// Band-limited samples of f(x - shift) for f given on a uniform grid with
// step dx. The input is zero-padded well past |shift| before the FFT, so
// content shifted off the original window is discarded, not wrapped back in.
cvector spectral_shift(const cvector& f, double dx, double shift);

// Precomputed zero-padded spectrum for evaluating many shifts of one signal.
class PaddedSpectrum {
 public:
  // max_abs_shift bounds the shifts that will be requested later.
  PaddedSpectrum(const cvector& f, double dx, double max_abs_shift);

  // Samples of f(x - shift) on the original grid (same length as f).
  cvector shifted(double shift) const;

 private:
  std::size_t n_ = 0;
  std::size_t margin_ = 0;
  std::size_t padded_ = 0;
  double dx_ = 1.0;
  double max_abs_shift_ = 0.0;
  cvector hat_;
};

// Fourier interpolation: evaluates the band-limited interpolant of f
// (samples at x0 + k*dx) at the uniform points u0 + m*du, m = 0..count-1.
// The transform is zero-padded to 4x the input length, so evaluation points
// up to ~1.5 grid spans away from the data return ~0 instead of wrapping.
cvector spectral_resample(const cvector& f, double x0, double dx, double u0,
                          double du, std::size_t count);

}  // namespace qndtomo::fftu
