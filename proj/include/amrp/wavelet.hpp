#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "amrp/common.hpp"

namespace amrp {

// Orthogonal wavelet filter pair (decomposition low-pass + derived high-pass).
struct Wavelet {
  std::string name;
  std::vector<double> lo;  // scaling filter
  std::vector<double> hi;  // g[k] = (-1)^k lo[L-1-k]

  static Wavelet from_name(const std::string& name) {
    Wavelet w;
    w.name = name;
    if (name == "haar") {
      const double s = 1.0 / std::sqrt(2.0);
      w.lo = {s, s};
    } else if (name == "db4") {
      const double r3 = std::sqrt(3.0);
      const double r2 = std::sqrt(2.0);
      w.lo = {(1.0 + r3) / (4.0 * r2), (3.0 + r3) / (4.0 * r2), (3.0 - r3) / (4.0 * r2),
              (1.0 - r3) / (4.0 * r2)};
    } else {
      fail(Errc::parse_error, "unknown wavelet: " + name);
    }
    const std::size_t L = w.lo.size();
    w.hi.resize(L);
    for (std::size_t k = 0; k < L; ++k) w.hi[k] = ((k % 2) ? -1.0 : 1.0) * w.lo[L - 1 - k];
    return w;
  }
};

struct WaveletCoefficients {
  std::string wavelet = "db4";
  std::vector<std::vector<double>> details;  // D1..DL (finest first)
  std::vector<double> approx;                // AL
  std::vector<std::size_t> level_lengths;    // input length entering each level

  std::size_t levels() const { return details.size(); }
};

namespace detail {

// one periodized analysis step; x must have even length
inline void dwt_step(const Wavelet& w, const std::vector<double>& x, std::vector<double>& a,
                     std::vector<double>& d) {
  const std::size_t n = x.size();
  const std::size_t half = n / 2;
  a.assign(half, 0.0);
  d.assign(half, 0.0);
  for (std::size_t i = 0; i < half; ++i) {
    double av = 0.0, dv = 0.0;
    for (std::size_t k = 0; k < w.lo.size(); ++k) {
      const double v = x[(2 * i + k) % n];
      av += v * w.lo[k];
      dv += v * w.hi[k];
    }
    a[i] = av;
    d[i] = dv;
  }
}

// exact inverse of dwt_step (orthogonal periodized transform)
inline std::vector<double> idwt_step(const Wavelet& w, const std::vector<double>& a,
                                     const std::vector<double>& d) {
  const std::size_t n = 2 * a.size();
  std::vector<double> x(n, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < w.lo.size(); ++k) {
      x[(2 * i + k) % n] += a[i] * w.lo[k] + d[i] * w.hi[k];
    }
  }
  return x;
}

}  // namespace detail

// Mallat cascade: convolve + downsample by two per level. Odd lengths are
// extended by repeating the final sample; original lengths are kept so the
// inverse trims back.
inline WaveletCoefficients dwt(const Signal& signal, const std::string& wavelet, std::size_t levels) {
  if (levels < 1) fail(Errc::too_many_levels, "levels must be >= 1");
  if (signal.size() < (static_cast<std::size_t>(1) << levels))
    fail(Errc::too_many_levels, "signal length " + std::to_string(signal.size()) +
                                    " < 2^" + std::to_string(levels));
  const Wavelet w = Wavelet::from_name(wavelet);
  WaveletCoefficients c;
  c.wavelet = wavelet;
  std::vector<double> cur = signal;
  for (std::size_t l = 0; l < levels; ++l) {
    c.level_lengths.push_back(cur.size());
    if (cur.size() % 2 != 0) cur.push_back(cur.back());
    std::vector<double> a, d;
    detail::dwt_step(w, cur, a, d);
    c.details.push_back(std::move(d));
    cur = std::move(a);
  }
  c.approx = std::move(cur);
  return c;
}

inline Signal idwt(const WaveletCoefficients& c) {
  if (c.details.empty() || c.level_lengths.size() != c.details.size())
    fail(Errc::inconsistent_structure, "empty or mismatched coefficient levels");
  const Wavelet w = Wavelet::from_name(c.wavelet);
  std::vector<double> cur = c.approx;
  for (std::size_t l = c.details.size(); l-- > 0;) {
    if (c.details[l].size() != cur.size())
      fail(Errc::inconsistent_structure,
           "level " + std::to_string(l + 1) + ": detail length " + std::to_string(c.details[l].size()) +
               " vs approx length " + std::to_string(cur.size()));
    cur = detail::idwt_step(w, cur, c.details[l]);
    if (cur.size() < c.level_lengths[l]) fail(Errc::inconsistent_structure, "level length bookkeeping");
    cur.resize(c.level_lengths[l]);
  }
  return cur;
}

struct ThresholdRule {
  enum class Mode { soft, hard };
  Mode mode = Mode::soft;
  double multiplier = 1.0;  // scales the universal threshold; 0 disables
};

inline double soft_threshold(double v, double t) {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}

// Per-subband thresholding with the universal threshold sigma*sqrt(2 ln N);
// sigma estimated from the median absolute deviation of the finest detail.
inline Signal wavelet_denoise(const Signal& signal, const std::string& wavelet, std::size_t levels,
                              const ThresholdRule& rule = {}) {
  WaveletCoefficients c = dwt(signal, wavelet, levels);
  std::vector<double> mags;
  mags.reserve(c.details[0].size());
  for (double v : c.details[0]) mags.push_back(std::abs(v));
  std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());
  const double sigma = (mags.empty() ? 0.0 : mags[mags.size() / 2]) / 0.6745;
  const double thr =
      rule.multiplier * sigma * std::sqrt(2.0 * std::log(static_cast<double>(signal.size())));
  for (auto& level : c.details) {
    for (auto& v : level) {
      if (rule.mode == ThresholdRule::Mode::soft)
        v = soft_threshold(v, thr);
      else if (std::abs(v) <= thr)
        v = 0.0;
    }
  }
  return idwt(c);
}

}  // namespace amrp
