#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "amrp/common.hpp"

namespace amrp {

// depth-1 decision stump over one feature
struct Stump {
  std::size_t feature = 0;
  double threshold = 0.0;
  int polarity = 1;  // +1: predict 1 above threshold; -1: predict 1 below

  int predict_pm(const std::vector<double>& x) const {
    const double side = x[feature] > threshold ? 1.0 : -1.0;
    return static_cast<int>(side) * polarity > 0 ? 1 : -1;
  }
};

// Exponential-loss boosting over stumps.
struct AdaBoostModel {
  std::vector<Stump> stumps;
  std::vector<double> weights;  // alpha_t

  double additive_score(const std::vector<double>& x) const {
    double f = 0.0;
    for (std::size_t t = 0; t < stumps.size(); ++t)
      f += weights[t] * static_cast<double>(stumps[t].predict_pm(x));
    return f;
  }
};

struct AdaBoostConfig {
  std::size_t rounds = 100;
};

namespace detail {

// best stump under current sample weights; presorted feature order supplied
struct StumpSearch {
  Stump stump;
  double error = 1.0;
};

inline StumpSearch best_stump(const std::vector<double>& x, const std::vector<int>& y,
                              std::size_t n, std::size_t d,
                              const std::vector<std::vector<std::size_t>>& order,
                              const std::vector<double>& w) {
  StumpSearch best;
  double w_pos = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    if (y[i] == 1) w_pos += w[i];
  const double w_all = 1.0;  // weights stay normalized

  for (std::size_t f = 0; f < d; ++f) {
    // err(polarity=+1, thr) = w(pos below or at thr) + w(neg above thr)
    double pos_below = 0.0, neg_below = 0.0;
    const auto& idx = order[f];
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t i = idx[k];
      if (y[i] == 1) pos_below += w[i];
      else neg_below += w[i];
      if (k + 1 < n && x[idx[k + 1] * d + f] == x[i * d + f]) continue;
      const double err_plus = pos_below + ((w_all - w_pos) - neg_below);
      for (int pol : {+1, -1}) {
        const double err = pol > 0 ? err_plus : w_all - err_plus;
        if (err < best.error - 1e-15) {
          best.error = err;
          best.stump.feature = f;
          best.stump.threshold =
              (k + 1 < n) ? x[i * d + f] + 0.5 * (x[idx[k + 1] * d + f] - x[i * d + f])
                          : x[i * d + f];
          best.stump.polarity = pol;
        }
      }
    }
  }
  return best;
}

}  // namespace detail

// x row-major (n x d) in canonical order; y in {0,1}.
inline AdaBoostModel train_adaboost(const std::vector<double>& x, const std::vector<int>& y,
                                    std::size_t n, std::size_t d, const AdaBoostConfig& cfg) {
  std::vector<std::vector<std::size_t>> order(d, std::vector<std::size_t>(n));
  for (std::size_t f = 0; f < d; ++f) {
    auto& idx = order[f];
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return x[a * d + f] < x[b * d + f]; });
  }

  AdaBoostModel model;
  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  for (std::size_t round = 0; round < cfg.rounds; ++round) {
    const auto found = detail::best_stump(x, y, n, d, order, w);
    const double eps = std::min(1.0 - 1e-12, std::max(1e-12, found.error));
    if (eps >= 0.5) break;  // no weak learner left
    const double alpha = 0.5 * std::log((1.0 - eps) / eps);
    model.stumps.push_back(found.stump);
    model.weights.push_back(alpha);
    if (found.error <= 0.0) break;  // perfect stump

    double wsum = 0.0;
    const double up = std::exp(alpha), down = std::exp(-alpha);
    for (std::size_t i = 0; i < n; ++i) {
      const double yi = y[i] == 1 ? 1.0 : -1.0;
      const double side = x[i * d + found.stump.feature] > found.stump.threshold ? 1.0 : -1.0;
      const double hi = side * static_cast<double>(found.stump.polarity);
      w[i] *= (yi * hi > 0) ? down : up;
      wsum += w[i];
    }
    for (auto& wi : w) wi /= wsum;
  }
  return model;
}

}  // namespace amrp
