#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

#include "amrp/common.hpp"

namespace amrp {

// Soft-margin RBF-kernel classifier trained by an SMO-style dual solver
// (maximal-violating-pair working set, LRU-less capped kernel row cache).
// Features are z-scored internally; the scaler ships with the model.
struct SvmModel {
  double gamma = 0.0;
  double bias = 0.0;
  std::vector<double> feature_mean;
  std::vector<double> feature_scale;        // 1/std, 1 where std == 0
  std::vector<std::vector<double>> sv;      // scaled support vectors
  std::vector<double> sv_coef;              // alpha_i * y_i

  double decision(const std::vector<double>& raw) const {
    std::vector<double> z(raw.size());
    for (std::size_t j = 0; j < raw.size(); ++j)
      z[j] = (raw[j] - feature_mean[j]) * feature_scale[j];
    double f = bias;
    for (std::size_t i = 0; i < sv.size(); ++i) {
      double dist = 0.0;
      for (std::size_t j = 0; j < z.size(); ++j) {
        const double t = z[j] - sv[i][j];
        dist += t * t;
      }
      f += sv_coef[i] * std::exp(-gamma * dist);
    }
    return f;
  }
};

struct SvmConfig {
  double c = 1.0;
  double gamma = 0.0;  // 0 resolves to 1/d
  double tolerance = 1e-3;
  std::size_t max_iterations = 200000;
  std::size_t cache_rows = 4000;
};

namespace detail {

class KernelCache {
 public:
  KernelCache(const std::vector<double>& x, std::size_t n, std::size_t d, double gamma,
              std::size_t cap)
      : x_(x), n_(n), d_(d), gamma_(gamma), cap_(cap) {}

  const std::vector<float>& row(std::size_t i) {
    auto it = rows_.find(i);
    if (it != rows_.end()) return it->second;
    std::vector<float> r(n_);
    const double* xi = x_.data() + i * d_;
    for (std::size_t j = 0; j < n_; ++j) {
      const double* xj = x_.data() + j * d_;
      double dist = 0.0;
      for (std::size_t k = 0; k < d_; ++k) {
        const double t = xi[k] - xj[k];
        dist += t * t;
      }
      r[j] = static_cast<float>(std::exp(-gamma_ * dist));
    }
    if (rows_.size() >= cap_) rows_.erase(rows_.begin());
    return rows_.emplace(i, std::move(r)).first->second;
  }

 private:
  const std::vector<double>& x_;
  std::size_t n_, d_;
  double gamma_;
  std::size_t cap_;
  std::unordered_map<std::size_t, std::vector<float>> rows_;
};

}  // namespace detail

// x is row-major (n x d), already scaled, in canonical row order; y in {0,1}.
inline SvmModel train_svm_scaled(const std::vector<double>& x, const std::vector<int>& y,
                                 std::size_t n, std::size_t d, const SvmConfig& cfg) {
  const double gamma = cfg.gamma > 0.0 ? cfg.gamma : 1.0 / static_cast<double>(d);
  std::vector<double> ys(n);
  for (std::size_t i = 0; i < n; ++i) ys[i] = y[i] == 1 ? 1.0 : -1.0;

  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);  // gradient of 1/2 aQa - e.a
  detail::KernelCache cache(x, n, d, gamma, cfg.cache_rows);

  const double C = cfg.c;
  double m_up = 0.0, m_low = 0.0;
  for (std::size_t iter = 0; iter < cfg.max_iterations; ++iter) {
    // maximal violating pair
    std::size_t i_up = n, i_low = n;
    m_up = -std::numeric_limits<double>::infinity();
    m_low = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
      const double v = -ys[t] * grad[t];
      const bool in_up = (ys[t] > 0 && alpha[t] < C) || (ys[t] < 0 && alpha[t] > 0);
      const bool in_low = (ys[t] > 0 && alpha[t] > 0) || (ys[t] < 0 && alpha[t] < C);
      if (in_up && v > m_up) {
        m_up = v;
        i_up = t;
      }
      if (in_low && v < m_low) {
        m_low = v;
        i_low = t;
      }
    }
    if (i_up == n || i_low == n || m_up - m_low < cfg.tolerance) break;

    const std::size_t i = i_up, j = i_low;
    const auto& ki = cache.row(i);
    const auto& kj = cache.row(j);
    const double quad = std::max(1e-12, static_cast<double>(ki[i]) + static_cast<double>(kj[j]) -
                                            2.0 * static_cast<double>(ki[j]));
    const double ai_old = alpha[i], aj_old = alpha[j];

    if (ys[i] != ys[j]) {
      // move along (d, d); alpha_i - alpha_j invariant
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = ai_old - aj_old;
      double aj = aj_old + delta;
      aj = std::min(std::min(C, C - diff), std::max(std::max(0.0, -diff), aj));
      alpha[j] = aj;
      alpha[i] = aj + diff;
    } else {
      // move along (d, -d); alpha_i + alpha_j invariant
      const double delta = (grad[j] - grad[i]) / quad;
      const double sum = ai_old + aj_old;
      double ai = ai_old + delta;
      ai = std::min(std::min(C, sum), std::max(std::max(0.0, sum - C), ai));
      alpha[i] = ai;
      alpha[j] = sum - ai;
    }

    const double di = (alpha[i] - ai_old) * ys[i];
    const double dj = (alpha[j] - aj_old) * ys[j];
    if (di == 0.0 && dj == 0.0) break;  // numerically stuck at the box
    for (std::size_t t = 0; t < n; ++t)
      grad[t] += ys[t] * (di * static_cast<double>(ki[t]) + dj * static_cast<double>(kj[t]));
  }

  SvmModel model;
  model.gamma = gamma;
  // bias from free vectors when any exist, else the violating-pair midpoint
  double bsum = 0.0;
  std::size_t bcount = 0;
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] > 1e-9 && alpha[t] < C - 1e-9) {
      bsum += -ys[t] * grad[t];
      ++bcount;
    }
  }
  model.bias = bcount ? bsum / static_cast<double>(bcount) : (m_up + m_low) / 2.0;

  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] <= 1e-12) continue;
    model.sv.emplace_back(x.begin() + static_cast<std::ptrdiff_t>(t * d),
                          x.begin() + static_cast<std::ptrdiff_t>((t + 1) * d));
    model.sv_coef.push_back(alpha[t] * ys[t]);
  }
  return model;
}

}  // namespace amrp
