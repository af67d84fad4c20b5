#pragma once

#include <complex>
#include <vector>

#include "amrp/common.hpp"

namespace amrp {

using cplx = std::complex<double>;

namespace detail {

inline bool is_pow2(std::size_t n) { return n && !(n & (n - 1)); }

inline std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// In-place iterative radix-2 Cooley-Tukey. n must be a power of two.
inline void fft_pow2(std::vector<cplx>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * kPi / static_cast<double>(len);
    const cplx wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cplx u = a[i + k];
        const cplx v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (inverse) {
    for (auto& x : a) x /= static_cast<double>(n);
  }
}

}  // namespace detail

// DFT of arbitrary length (Bluestein chirp-z fallback for non powers of two).
inline void fft(std::vector<cplx>& a, bool inverse = false) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  if (detail::is_pow2(n)) {
    detail::fft_pow2(a, inverse);
    return;
  }
  // Bluestein: x_k * chirp_k convolved with conjugate chirp.
  const std::size_t m = detail::next_pow2(2 * n - 1);
  std::vector<cplx> chirp(n);
  for (std::size_t k = 0; k < n; ++k) {
    // k^2 mod 2n keeps the angle argument small
    const std::size_t k2 = static_cast<std::size_t>((static_cast<unsigned __int128>(k) * k) % (2 * n));
    const double ang = (inverse ? 1.0 : -1.0) * kPi * static_cast<double>(k2) / static_cast<double>(n);
    chirp[k] = cplx(std::cos(ang), std::sin(ang));
  }
  std::vector<cplx> fa(m, cplx(0, 0)), fb(m, cplx(0, 0));
  for (std::size_t k = 0; k < n; ++k) fa[k] = a[k] * chirp[k];
  fb[0] = std::conj(chirp[0]);
  for (std::size_t k = 1; k < n; ++k) fb[k] = fb[m - k] = std::conj(chirp[k]);
  detail::fft_pow2(fa, false);
  detail::fft_pow2(fb, false);
  for (std::size_t k = 0; k < m; ++k) fa[k] *= fb[k];
  detail::fft_pow2(fa, true);
  for (std::size_t k = 0; k < n; ++k) a[k] = fa[k] * chirp[k];
  if (inverse) {
    for (auto& x : a) x /= static_cast<double>(n);
  }
}

inline std::vector<cplx> fft_real(const Signal& x) {
  std::vector<cplx> a(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) a[i] = cplx(x[i], 0.0);
  fft(a);
  return a;
}

}  // namespace amrp
