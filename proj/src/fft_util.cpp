// qndtomo: quantum-nondemolition signal/meter coupling and homodyne tomography.
// SPDX-License-Identifier: MIT
#include "fft_util.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>

namespace qndtomo::fftu {
namespace {

constexpr long double kTwoPiL = 6.283185307179586476925286766559L;

// exp(i*phase) with the argument reduced in long double first.
inline complex cis(long double phase) {
  long double p = std::fmod(phase, kTwoPiL);
  return {static_cast<double>(std::cos(p)), static_cast<double>(std::sin(p))};
}

// One cached in-place FFTW plan per (size, direction).
struct CachedPlan {
  fftw_plan plan = nullptr;
  fftw_complex* buf = nullptr;

  ~CachedPlan() {
    if (plan) fftw_destroy_plan(plan);
    if (buf) fftw_free(buf);
  }
};

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::pair<std::size_t, int>, CachedPlan>& plan_cache() {
  static std::map<std::pair<std::size_t, int>, CachedPlan> cache;
  return cache;
}

void run_fft(cvector& data, int sign) {
  const std::size_t n = data.size();
  if (n == 0) fail(ErrorCode::invalid_argument, "fft: empty input");

  std::lock_guard<std::mutex> lock(cache_mutex());
  CachedPlan& entry = plan_cache()[{n, sign}];
  if (!entry.plan) {
    entry.buf = fftw_alloc_complex(n);
    if (!entry.buf) fail(ErrorCode::internal, "fft: allocation failed");
    entry.plan = fftw_plan_dft_1d(static_cast<int>(n), entry.buf, entry.buf,
                                  sign, FFTW_ESTIMATE);
    if (!entry.plan) fail(ErrorCode::internal, "fft: planning failed");
  }
  static_assert(sizeof(fftw_complex) == sizeof(complex));
  std::memcpy(entry.buf, data.data(), n * sizeof(complex));
  fftw_execute(entry.plan);
  std::memcpy(data.data(), entry.buf, n * sizeof(complex));
}

}  // namespace

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void fft_forward(cvector& data) { run_fft(data, FFTW_FORWARD); }

void fft_inverse(cvector& data) {
  run_fft(data, FFTW_BACKWARD);
  const double inv = 1.0 / static_cast<double>(data.size());
  for (complex& z : data) z *= inv;
}

cvector linear_convolution(const cvector& a, const cvector& b) {
  if (a.empty() || b.empty()) {
    fail(ErrorCode::invalid_argument, "linear_convolution: empty input");
  }
  const std::size_t full = a.size() + b.size() - 1;
  const std::size_t padded = next_pow2(full);
  cvector fa(padded, complex{0.0, 0.0});
  cvector fb(padded, complex{0.0, 0.0});
  std::copy(a.begin(), a.end(), fa.begin());
  std::copy(b.begin(), b.end(), fb.begin());
  fft_forward(fa);
  fft_forward(fb);
  for (std::size_t i = 0; i < padded; ++i) fa[i] *= fb[i];
  fft_inverse(fa);
  fa.resize(full);
  return fa;
}

cvector czt_exponential_sum(const cvector& g, double y0, double dy, double p0,
                            double dp, std::size_t count) {
  if (g.empty() || count == 0) {
    fail(ErrorCode::invalid_argument, "czt: empty input");
  }
  const std::size_t K = g.size();
  const long double w = static_cast<long double>(dp) * dy;

  // p*y = p0*y0 + p0*k*dy + l*dp*y0 + w*l*k, and
  // l*k = (l^2 + k^2 - (l-k)^2)/2 turns the cross term into a convolution.
  cvector h(K);
  for (std::size_t k = 0; k < K; ++k) {
    long double kl = static_cast<long double>(k);
    h[k] = g[k] * cis(static_cast<long double>(p0) * dy * kl +
                      0.5L * w * kl * kl);
  }
  // kernel[j] = exp(-i*w*m^2/2) with m = j - (K-1) covering -(K-1)..count-1.
  cvector kernel(K + count - 1);
  for (std::size_t j = 0; j < kernel.size(); ++j) {
    long double m =
        static_cast<long double>(j) - static_cast<long double>(K - 1);
    kernel[j] = cis(-0.5L * w * m * m);
  }
  cvector conv = linear_convolution(h, kernel);

  cvector out(count);
  for (std::size_t l = 0; l < count; ++l) {
    long double ll = static_cast<long double>(l);
    complex pre = cis(static_cast<long double>(p0) * y0 +
                      ll * static_cast<long double>(dp) * y0 +
                      0.5L * w * ll * ll);
    out[l] = pre * conv[l + K - 1];
  }
  return out;
}

PaddedSpectrum::PaddedSpectrum(const cvector& f, double dx,
                               double max_abs_shift)
    : n_(f.size()), dx_(dx), max_abs_shift_(std::abs(max_abs_shift)) {
  if (f.empty()) fail(ErrorCode::invalid_argument, "spectrum: empty input");
  if (!(dx > 0.0)) fail(ErrorCode::invalid_argument, "spectrum: dx <= 0");
  margin_ = static_cast<std::size_t>(std::ceil(max_abs_shift_ / dx)) + 16;
  padded_ = next_pow2(n_ + 2 * margin_);
  hat_.assign(padded_, complex{0.0, 0.0});
  std::copy(f.begin(), f.end(), hat_.begin() + static_cast<long>(margin_));
  fft_forward(hat_);
}

cvector PaddedSpectrum::shifted(double shift) const {
  if (std::abs(shift) > max_abs_shift_ + dx_) {
    fail(ErrorCode::invalid_argument, "spectrum: shift exceeds declared bound");
  }
  const std::size_t P = padded_;
  cvector buf(P);
  const long double wave = kTwoPiL / (static_cast<long double>(P) * dx_);
  for (std::size_t j = 0; j < P; ++j) {
    long double freq = (j < P / 2) ? static_cast<long double>(j)
                                   : static_cast<long double>(j) -
                                         static_cast<long double>(P);
    buf[j] = hat_[j] * cis(-wave * freq * shift);
  }
  fft_inverse(buf);
  cvector out(n_);
  std::copy(buf.begin() + static_cast<long>(margin_),
            buf.begin() + static_cast<long>(margin_ + n_), out.begin());
  return out;
}

cvector spectral_shift(const cvector& f, double dx, double shift) {
  PaddedSpectrum spec(f, dx, std::abs(shift));
  return spec.shifted(shift);
}

cvector spectral_resample(const cvector& f, double x0, double dx, double u0,
                          double du, std::size_t count) {
  if (f.empty() || count == 0) {
    fail(ErrorCode::invalid_argument, "spectral_resample: empty input");
  }
  if (!(dx > 0.0)) {
    fail(ErrorCode::invalid_argument, "spectral_resample: dx <= 0");
  }
  const std::size_t n = f.size();
  const std::size_t P = next_pow2(4 * n);
  cvector hat(P, complex{0.0, 0.0});
  std::copy(f.begin(), f.end(), hat.begin());
  fft_forward(hat);

  // Reorder coefficients to signed frequencies nu = k - P/2, then evaluate
  // (1/P) sum_k hat[nu_k] e^{i*(2*pi/P)*nu_k*t} at t = (u - x0)/dx via CZT.
  cvector g(P);
  for (std::size_t k = 0; k < P; ++k) g[k] = hat[(k + P / 2) % P];

  const double t0 = (u0 - x0) / dx;
  const double dt = du / dx;
  const double scale = kTwoPi / static_cast<double>(P);
  cvector out = czt_exponential_sum(g, -0.5 * static_cast<double>(P), 1.0,
                                    scale * t0, scale * dt, count);
  const double inv = 1.0 / static_cast<double>(P);
  for (complex& z : out) z *= inv;
  return out;
}

}  // namespace qndtomo::fftu
