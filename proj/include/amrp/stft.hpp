#pragma once

#include <string>
#include <vector>

#include "amrp/fft.hpp"

namespace amrp {

enum class WindowFn { hann, rect };

inline Signal make_window(WindowFn fn, std::size_t len) {
  Signal w(len, 1.0);
  if (fn == WindowFn::hann) {
    for (std::size_t i = 0; i < len; ++i)
      w[i] = 0.5 * (1.0 - std::cos(2.0 * kPi * static_cast<double>(i) / static_cast<double>(len)));
  }
  return w;
}

struct Spectrogram {
  std::size_t window_len = 64;
  std::size_t hop = 32;
  std::vector<std::vector<double>> magnitudes;  // frames x (window/2 + 1)
  std::vector<double> freqs_hz;                 // bin centers
  std::vector<double> times_s;                  // frame centers

  std::size_t frame_count() const { return magnitudes.size(); }
  std::size_t bin_count() const { return magnitudes.empty() ? 0 : magnitudes[0].size(); }
};

// Windowed DFT magnitude per frame; frame m starts at sample m*hop.
inline Spectrogram stft(const Signal& x, std::size_t window_len, std::size_t hop, WindowFn window_fn,
                        double sample_rate_hz) {
  if (window_len == 0 || hop == 0) fail(Errc::config_error, "window and hop must be positive");
  if (window_len > x.size())
    fail(Errc::window_too_long,
         "window " + std::to_string(window_len) + " > signal " + std::to_string(x.size()));

  Spectrogram s;
  s.window_len = window_len;
  s.hop = hop;
  const Signal w = make_window(window_fn, window_len);
  const std::size_t bins = window_len / 2 + 1;
  const std::size_t frames = (x.size() - window_len) / hop + 1;

  s.freqs_hz.resize(bins);
  for (std::size_t k = 0; k < bins; ++k)
    s.freqs_hz[k] = static_cast<double>(k) * sample_rate_hz / static_cast<double>(window_len);

  s.magnitudes.reserve(frames);
  s.times_s.reserve(frames);
  std::vector<cplx> buf(window_len);
  for (std::size_t m = 0; m < frames; ++m) {
    const std::size_t start = m * hop;
    for (std::size_t i = 0; i < window_len; ++i) buf[i] = cplx(x[start + i] * w[i], 0.0);
    fft(buf);
    std::vector<double> mags(bins);
    for (std::size_t k = 0; k < bins; ++k) mags[k] = std::abs(buf[k]);
    s.magnitudes.push_back(std::move(mags));
    s.times_s.push_back((static_cast<double>(start) + static_cast<double>(window_len) / 2.0) /
                        sample_rate_hz);
  }
  return s;
}

struct PowerSpectrum {
  std::vector<double> freqs_hz;  // 0..Nyquist
  std::vector<double> power;     // one-sided periodogram, unit^2/Hz
};

// Plain periodogram. Summing power * delta_f recovers the mean square value.
inline PowerSpectrum psd(const Signal& x, double sample_rate_hz) {
  if (x.empty()) fail(Errc::empty_input, "psd of empty signal");
  const std::size_t n = x.size();
  auto spec = fft_real(x);
  const std::size_t bins = n / 2 + 1;
  PowerSpectrum p;
  p.freqs_hz.resize(bins);
  p.power.resize(bins);
  const double norm = 1.0 / (sample_rate_hz * static_cast<double>(n));
  for (std::size_t k = 0; k < bins; ++k) {
    p.freqs_hz[k] = static_cast<double>(k) * sample_rate_hz / static_cast<double>(n);
    double v = std::norm(spec[k]) * norm;
    const bool interior = k != 0 && !(n % 2 == 0 && k == n / 2);
    if (interior) v *= 2.0;
    p.power[k] = v;
  }
  return p;
}

}  // namespace amrp
