#pragma once

#include <algorithm>
#include <complex>
#include <vector>

#include "amrp/common.hpp"

namespace amrp {

// IIR transfer function b(z)/a(z), a[0] == 1.
struct IirCoeffs {
  std::vector<double> b;
  std::vector<double> a;
  // samples until the slowest pole has decayed to ~1e-6; governs edge padding
  std::size_t settle_hint = 0;
  std::size_t order() const { return a.size() - 1; }
};

namespace detail {

// expand Π (1 - r_i z^-1) into real polynomial coefficients
inline std::vector<double> real_poly(const std::vector<std::complex<double>>& roots) {
  std::vector<std::complex<double>> p{1.0};
  for (const auto& r : roots) {
    std::vector<std::complex<double>> q(p.size() + 1, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      q[i] += p[i];
      q[i + 1] -= p[i] * r;
    }
    p = std::move(q);
  }
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i].real();
  return out;
}

// Left-half-plane Butterworth prototype poles, unit cutoff.
inline std::vector<std::complex<double>> butter_prototype(std::size_t n) {
  std::vector<std::complex<double>> poles;
  for (std::size_t k = 0; k < n; ++k) {
    const double theta = kPi * (2.0 * static_cast<double>(k) + static_cast<double>(n) + 1.0) /
                         (2.0 * static_cast<double>(n));
    poles.emplace_back(std::cos(theta), std::sin(theta));
  }
  return poles;
}

inline std::complex<double> eval_poly(const std::vector<double>& c, std::complex<double> zinv) {
  // c[0] + c[1] z^-1 + ... evaluated at given z^-1
  std::complex<double> acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * zinv + c[i];
  return acc;
}

inline std::size_t settle_from_poles(const std::vector<std::complex<double>>& zpoles,
                                     std::size_t order) {
  double rho = 0.0;
  for (const auto& p : zpoles) rho = std::max(rho, std::abs(p));
  const std::size_t floor_pad = 3 * (order + 1);
  if (rho <= 0.0 || rho >= 1.0) return 16384;
  const double n = -13.8155 / std::log(rho);  // ln(1e-6)
  if (n < static_cast<double>(floor_pad)) return floor_pad;
  if (n > 16384.0) return 16384;
  return static_cast<std::size_t>(n);
}

}  // namespace detail

// Butterworth band-pass of even total order via the analog low-pass to
// band-pass transform and the bilinear map. lo_hz == 0 degenerates to a pure
// low-pass of the same total order.
inline IirCoeffs design_bandpass(double lo_hz, double hi_hz, std::size_t order, double sample_rate_hz) {
  if (!(lo_hz >= 0.0 && lo_hz < hi_hz && hi_hz < sample_rate_hz / 2.0))
    fail(Errc::invalid_band_edges,
         "need 0 <= lo < hi < fs/2, got [" + std::to_string(lo_hz) + ", " + std::to_string(hi_hz) + "]");
  if (order < 2 || order % 2 != 0) fail(Errc::config_error, "filter order must be even and >= 2");

  using C = std::complex<double>;
  IirCoeffs f;

  if (lo_hz == 0.0) {
    const std::size_t n = order;
    const double wc = std::tan(kPi * hi_hz / sample_rate_hz);
    std::vector<C> zpoles;
    for (const auto& p : detail::butter_prototype(n)) {
      const C s = p * wc;
      zpoles.push_back((1.0 + s) / (1.0 - s));
    }
    f.a = detail::real_poly(zpoles);
    f.b = detail::real_poly(std::vector<C>(n, C(-1.0, 0.0)));  // n zeros at z = -1
    // unit gain at DC
    const double k = detail::eval_poly(f.a, C(1.0, 0.0)).real() / detail::eval_poly(f.b, C(1.0, 0.0)).real();
    for (auto& c : f.b) c *= k;
    f.settle_hint = detail::settle_from_poles(zpoles, order);
    return f;
  }

  const std::size_t n = order / 2;
  const double t_lo = std::tan(kPi * lo_hz / sample_rate_hz);
  const double t_hi = std::tan(kPi * hi_hz / sample_rate_hz);
  const double w0sq = t_lo * t_hi;
  const double bw = t_hi - t_lo;

  std::vector<C> zpoles;
  for (const auto& p : detail::butter_prototype(n)) {
    // s^2 - p*bw*s + w0^2 = 0
    const C pb = p * bw;
    const C disc = std::sqrt(pb * pb - 4.0 * w0sq);
    for (const C s : {(pb + disc) / 2.0, (pb - disc) / 2.0}) zpoles.push_back((1.0 + s) / (1.0 - s));
  }
  f.a = detail::real_poly(zpoles);

  std::vector<C> zzeros(n, C(1.0, 0.0));  // z = 1 from the n analog zeros at s = 0
  zzeros.insert(zzeros.end(), n, C(-1.0, 0.0));
  f.b = detail::real_poly(zzeros);

  // unit gain at the geometric center frequency
  const double w_center = 2.0 * std::atan(std::sqrt(w0sq));
  const C zinv = std::exp(C(0.0, -w_center));
  const double k = std::abs(detail::eval_poly(f.a, zinv)) / std::abs(detail::eval_poly(f.b, zinv));
  for (auto& c : f.b) c *= k;
  f.settle_hint = detail::settle_from_poles(zpoles, order);
  return f;
}

// Direct-form II transposed with explicit initial state.
inline Signal lfilter(const IirCoeffs& f, const Signal& x, const std::vector<double>& zi) {
  const std::size_t m = f.order();
  std::vector<double> b = f.b, a = f.a;
  b.resize(m + 1, 0.0);
  a.resize(m + 1, 0.0);
  std::vector<double> z = zi;
  z.resize(m, 0.0);
  Signal y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    const double yi = b[0] * xi + (m ? z[0] : 0.0);
    for (std::size_t j = 0; j + 1 < m; ++j) z[j] = b[j + 1] * xi + z[j + 1] - a[j + 1] * yi;
    if (m) z[m - 1] = b[m] * xi - a[m] * yi;
    y[i] = yi;
  }
  return y;
}

// Steady-state initial filter state for a unit step, so start-up transients
// vanish for signals matched at the edges.
inline std::vector<double> lfilter_zi(const IirCoeffs& f) {
  const std::size_t m = f.order();
  std::vector<double> b = f.b, a = f.a;
  b.resize(m + 1, 0.0);
  a.resize(m + 1, 0.0);
  // Solve (I - A^T) zi = B with A the companion matrix of a,
  // B[i] = b[i+1] - a[i+1] b[0].
  std::vector<std::vector<double>> M(m, std::vector<double>(m, 0.0));
  std::vector<double> rhs(m);
  for (std::size_t i = 0; i < m; ++i) {
    M[i][0] += a[i + 1];
    M[i][i] += 1.0;
    if (i + 1 < m) M[i][i + 1] -= 1.0;
    rhs[i] = b[i + 1] - a[i + 1] * b[0];
  }
  // Gaussian elimination with partial pivoting
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < m; ++r)
      if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
    std::swap(M[col], M[piv]);
    std::swap(rhs[col], rhs[piv]);
    for (std::size_t r = col + 1; r < m; ++r) {
      if (M[col][col] == 0.0) continue;
      const double fac = M[r][col] / M[col][col];
      for (std::size_t c = col; c < m; ++c) M[r][c] -= fac * M[col][c];
      rhs[r] -= fac * rhs[col];
    }
  }
  std::vector<double> zi(m, 0.0);
  for (std::size_t i = m; i-- > 0;) {
    double s = rhs[i];
    for (std::size_t c = i + 1; c < m; ++c) s -= M[i][c] * zi[c];
    zi[i] = (M[i][i] != 0.0) ? s / M[i][i] : 0.0;
  }
  return zi;
}

// Forward-backward (zero-phase) filtering with odd-reflection edge padding.
// The pad length follows the slowest pole so narrow bands settle inside it.
inline Signal filtfilt(const IirCoeffs& f, const Signal& x) {
  const std::size_t min_pad = 3 * (f.order() + 1);
  if (x.size() <= min_pad)
    fail(Errc::signal_too_short, "signal length " + std::to_string(x.size()) +
                                     " must exceed pad length " + std::to_string(min_pad));
  const std::size_t pad = std::min(x.size() - 1, std::max(min_pad, f.settle_hint));
  Signal ext;
  ext.reserve(x.size() + 2 * pad);
  for (std::size_t i = pad; i >= 1; --i) ext.push_back(2.0 * x.front() - x[i]);
  ext.insert(ext.end(), x.begin(), x.end());
  for (std::size_t i = 2; i <= pad + 1; ++i) ext.push_back(2.0 * x.back() - x[x.size() - i]);

  const auto zi = lfilter_zi(f);
  auto scale_zi = [&zi](double x0) {
    std::vector<double> z = zi;
    for (auto& v : z) v *= x0;
    return z;
  };

  Signal y = lfilter(f, ext, scale_zi(ext.front()));
  std::reverse(y.begin(), y.end());
  y = lfilter(f, y, scale_zi(y.front()));
  std::reverse(y.begin(), y.end());
  return Signal(y.begin() + static_cast<std::ptrdiff_t>(pad),
                y.begin() + static_cast<std::ptrdiff_t>(pad + x.size()));
}

// Zero-phase Butterworth band-pass, same length as input.
inline Signal bandpass_filter(const Signal& x, double lo_hz, double hi_hz, std::size_t order,
                              double sample_rate_hz) {
  const IirCoeffs f = design_bandpass(lo_hz, hi_hz, order, sample_rate_hz);
  return filtfilt(f, x);
}

}  // namespace amrp
