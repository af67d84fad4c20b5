#pragma once

#include <vector>

#include "amrp/fft.hpp"

namespace amrp {

struct AnalyticSignal {
  Signal real;
  Signal imag;          // discrete Hilbert transform of the input
  Signal amplitude;     // envelope sqrt(x^2 + y^2)
  Signal frequency_hz;  // unwrapped-phase derivative
};

// Analytic signal via one-sided spectrum doubling: x_a = ifft(fft(x) * 2U).
inline AnalyticSignal hilbert_analyze(const Signal& x, double sample_rate_hz) {
  if (x.empty()) fail(Errc::empty_input, "hilbert of empty signal");
  const std::size_t n = x.size();
  std::vector<cplx> spec = fft_real(x);
  for (std::size_t k = 0; k < n; ++k) {
    const bool dc = (k == 0);
    const bool nyq = (n % 2 == 0 && k == n / 2);
    if (dc || nyq) continue;       // kept as-is
    if (k < (n + 1) / 2)
      spec[k] *= 2.0;              // positive frequencies
    else
      spec[k] = cplx(0.0, 0.0);    // negative frequencies
  }
  fft(spec, /*inverse=*/true);

  AnalyticSignal out;
  out.real = x;
  out.imag.resize(n);
  out.amplitude.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.imag[i] = spec[i].imag();
    out.amplitude[i] = std::hypot(x[i], out.imag[i]);
  }

  // unwrap phase, then centered first difference
  Signal phase(n);
  for (std::size_t i = 0; i < n; ++i) phase[i] = std::atan2(out.imag[i], x[i]);
  double offset = 0.0;
  Signal unwrapped(n);
  unwrapped[0] = phase[0];
  for (std::size_t i = 1; i < n; ++i) {
    double d = phase[i] - phase[i - 1];
    if (d > kPi) offset -= 2.0 * kPi;
    else if (d < -kPi) offset += 2.0 * kPi;
    unwrapped[i] = phase[i] + offset;
  }
  out.frequency_hz.assign(n, 0.0);
  const double scale = sample_rate_hz / (2.0 * kPi);
  if (n >= 2) {
    out.frequency_hz[0] = (unwrapped[1] - unwrapped[0]) * scale;
    out.frequency_hz[n - 1] = (unwrapped[n - 1] - unwrapped[n - 2]) * scale;
    for (std::size_t i = 1; i + 1 < n; ++i)
      out.frequency_hz[i] = (unwrapped[i + 1] - unwrapped[i - 1]) * 0.5 * scale;
  }
  return out;
}

}  // namespace amrp
