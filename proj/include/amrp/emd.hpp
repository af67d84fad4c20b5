#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "amrp/common.hpp"

namespace amrp {

struct EmdConfig {
  std::size_t max_imfs = 8;
  double sift_sd_threshold = 0.25;
  std::size_t max_sift_iters = 10;
};

struct ImfSet {
  std::vector<Signal> imfs;
  Signal residue;
};

namespace detail {

struct Extrema {
  std::vector<double> t;
  std::vector<double> v;
};

// strict local extrema; plateaus contribute their midpoint
inline void find_extrema(const Signal& x, Extrema& maxima, Extrema& minima) {
  maxima.t.clear();
  maxima.v.clear();
  minima.t.clear();
  minima.v.clear();
  const std::size_t n = x.size();
  std::size_t i = 1;
  while (i + 1 < n) {
    if (x[i] == x[i + 1]) {
      std::size_t j = i;
      while (j + 1 < n && x[j + 1] == x[i]) ++j;
      if (j + 1 < n) {
        if (x[i - 1] < x[i] && x[j + 1] < x[i]) {
          maxima.t.push_back(static_cast<double>(i + j) / 2.0);
          maxima.v.push_back(x[i]);
        } else if (x[i - 1] > x[i] && x[j + 1] > x[i]) {
          minima.t.push_back(static_cast<double>(i + j) / 2.0);
          minima.v.push_back(x[i]);
        }
      }
      i = j + 1;
      continue;
    }
    if (x[i] > x[i - 1] && x[i] > x[i + 1]) {
      maxima.t.push_back(static_cast<double>(i));
      maxima.v.push_back(x[i]);
    } else if (x[i] < x[i - 1] && x[i] < x[i + 1]) {
      minima.t.push_back(static_cast<double>(i));
      minima.v.push_back(x[i]);
    }
    ++i;
  }
}

// natural cubic spline through (t, v), evaluated on the integer grid [0, n)
inline Signal spline_envelope(const Extrema& pts, std::size_t n) {
  const std::size_t m = pts.t.size();
  if (m == 1) return Signal(n, pts.v[0]);
  if (m == 2) {
    Signal out(n);
    const double slope = (pts.v[1] - pts.v[0]) / (pts.t[1] - pts.t[0]);
    for (std::size_t i = 0; i < n; ++i)
      out[i] = pts.v[0] + slope * (static_cast<double>(i) - pts.t[0]);
    return out;
  }
  // solve for second derivatives (natural boundary)
  std::vector<double> h(m - 1), alpha(m, 0.0), l(m), mu(m), z(m), c(m, 0.0);
  for (std::size_t i = 0; i + 1 < m; ++i) h[i] = pts.t[i + 1] - pts.t[i];
  for (std::size_t i = 1; i + 1 < m; ++i)
    alpha[i] = 3.0 * ((pts.v[i + 1] - pts.v[i]) / h[i] - (pts.v[i] - pts.v[i - 1]) / h[i - 1]);
  l[0] = 1.0;
  mu[0] = 0.0;
  z[0] = 0.0;
  for (std::size_t i = 1; i + 1 < m; ++i) {
    l[i] = 2.0 * (pts.t[i + 1] - pts.t[i - 1]) - h[i - 1] * mu[i - 1];
    mu[i] = h[i] / l[i];
    z[i] = (alpha[i] - h[i - 1] * z[i - 1]) / l[i];
  }
  c[m - 1] = 0.0;
  for (std::size_t i = m - 1; i-- > 0;) c[i] = z[i] - mu[i] * c[i + 1];

  Signal out(n);
  std::size_t seg = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i);
    while (seg + 2 < m && t > pts.t[seg + 1]) ++seg;
    const double dt = t - pts.t[seg];
    const double b =
        (pts.v[seg + 1] - pts.v[seg]) / h[seg] - h[seg] * (c[seg + 1] + 2.0 * c[seg]) / 3.0;
    const double d = (c[seg + 1] - c[seg]) / (3.0 * h[seg]);
    out[i] = pts.v[seg] + b * dt + c[seg] * dt * dt + d * dt * dt * dt;
  }
  return out;
}

// mirror up to two extrema about each end so envelopes cover the full span
inline Extrema mirrored(const Extrema& e, std::size_t n) {
  Extrema out = e;
  const double t0 = 0.0;
  const double t1 = static_cast<double>(n - 1);
  const std::size_t m = e.t.size();
  const std::size_t k = m < 2 ? m : 2;
  for (std::size_t i = 0; i < k; ++i) {
    out.t.insert(out.t.begin(), 2.0 * t0 - e.t[i]);
    out.v.insert(out.v.begin(), e.v[i]);
  }
  for (std::size_t i = 0; i < k; ++i) {
    out.t.push_back(2.0 * t1 - e.t[m - 1 - i]);
    out.v.push_back(e.v[m - 1 - i]);
  }
  // mirroring about t0 reverses order on the left side; restore monotone t
  std::vector<std::size_t> idx(out.t.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return out.t[a] < out.t[b]; });
  Extrema sorted;
  double last_t = -1e300;
  for (std::size_t i : idx) {
    if (out.t[i] <= last_t) continue;  // drop duplicate abscissae
    sorted.t.push_back(out.t[i]);
    sorted.v.push_back(out.v[i]);
    last_t = out.t[i];
  }
  return sorted;
}

inline std::size_t count_extrema(const Signal& x) {
  Extrema mx, mn;
  find_extrema(x, mx, mn);
  return mx.t.size() + mn.t.size();
}

}  // namespace detail

// Empirical mode decomposition by envelope-mean sifting. The residue is
// defined as input minus the IMF sum, so completeness holds by construction.
inline ImfSet emd(const Signal& x, const EmdConfig& cfg = {}) {
  ImfSet out;
  out.residue = x;
  if (x.size() < 4) return out;

  Signal residue = x;
  while (out.imfs.size() < cfg.max_imfs) {
    if (detail::count_extrema(residue) < 4) break;
    Signal h = residue;
    for (std::size_t iter = 0; iter < cfg.max_sift_iters; ++iter) {
      detail::Extrema maxima, minima;
      detail::find_extrema(h, maxima, minima);
      if (maxima.t.size() < 2 || minima.t.size() < 2) break;
      const Signal upper = detail::spline_envelope(detail::mirrored(maxima, h.size()), h.size());
      const Signal lower = detail::spline_envelope(detail::mirrored(minima, h.size()), h.size());
      double num = 0.0, den = 0.0;
      Signal next(h.size());
      for (std::size_t i = 0; i < h.size(); ++i) {
        const double mean = 0.5 * (upper[i] + lower[i]);
        next[i] = h[i] - mean;
        num += mean * mean;
        den += h[i] * h[i];
      }
      h = std::move(next);
      if (den == 0.0 || num / den < cfg.sift_sd_threshold) break;
    }
    for (std::size_t i = 0; i < residue.size(); ++i) residue[i] -= h[i];
    out.imfs.push_back(std::move(h));
  }
  out.residue = std::move(residue);
  return out;
}

}  // namespace amrp
