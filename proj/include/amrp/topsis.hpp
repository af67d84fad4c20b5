#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "amrp/common.hpp"

namespace amrp {

using Matrix = std::vector<std::vector<double>>;  // rows = alternatives

struct DecisionMatrix {
  Matrix x;  // m alternatives x n criteria, entries >= 0

  std::size_t alternatives() const { return x.size(); }
  std::size_t criteria() const { return x.empty() ? 0 : x[0].size(); }

  void validate() const {
    if (alternatives() < 2) fail(Errc::empty_input, "need at least 2 alternatives");
    if (criteria() < 1) fail(Errc::empty_input, "need at least 1 criterion");
    for (const auto& row : x)
      if (row.size() != criteria()) fail(Errc::dimension_mismatch, "ragged decision matrix");
  }
};

struct TopsisResult {
  Matrix normalized;                // R
  Matrix weighted;                  // V
  std::vector<double> ideal_best;   // V+
  std::vector<double> ideal_worst;  // V-
  std::vector<double> sep_best;     // S+ per alternative
  std::vector<double> sep_worst;    // S- per alternative
  std::vector<double> closeness;    // C in [0,1]
  std::vector<std::size_t> ranking; // indices, best first
};

// R_ij = x_ij / sqrt(sum_i x_ij^2)
inline Matrix topsis_normalize(const DecisionMatrix& dm) {
  dm.validate();
  const std::size_t m = dm.alternatives(), n = dm.criteria();
  std::vector<double> norms(n, 0.0);
  for (const auto& row : dm.x)
    for (std::size_t j = 0; j < n; ++j) norms[j] += row[j] * row[j];
  for (std::size_t j = 0; j < n; ++j) {
    if (norms[j] == 0.0) fail(Errc::zero_column, "criterion " + std::to_string(j) + " is all zero");
    norms[j] = std::sqrt(norms[j]);
  }
  Matrix r(m, std::vector<double>(n));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) r[i][j] = dm.x[i][j] / norms[j];
  return r;
}

// V_ij = W_j * R_ij; weights are renormalized to sum to one.
inline Matrix topsis_apply_weights(const Matrix& r, const std::vector<double>& weights) {
  if (r.empty()) fail(Errc::empty_input, "empty normalized matrix");
  const std::size_t n = r[0].size();
  if (weights.size() != n)
    fail(Errc::weight_dimension_mismatch,
         std::to_string(weights.size()) + " weights for " + std::to_string(n) + " criteria");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) fail(Errc::non_positive_weight, "weights must be > 0");
    sum += w;
  }
  Matrix v(r.size(), std::vector<double>(n));
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) v[i][j] = (weights[j] / sum) * r[i][j];
  return v;
}

// Separations from the ideal best/worst and relative closeness. All criteria
// are benefit-type: V+ takes column maxima, V- column minima.
inline TopsisResult topsis_score(const Matrix& v) {
  TopsisResult res;
  res.weighted = v;
  const std::size_t m = v.size();
  const std::size_t n = v.empty() ? 0 : v[0].size();
  res.ideal_best.assign(n, -1e300);
  res.ideal_worst.assign(n, 1e300);
  for (const auto& row : v)
    for (std::size_t j = 0; j < n; ++j) {
      res.ideal_best[j] = std::max(res.ideal_best[j], row[j]);
      res.ideal_worst[j] = std::min(res.ideal_worst[j], row[j]);
    }
  res.sep_best.resize(m);
  res.sep_worst.resize(m);
  res.closeness.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    double sp = 0.0, sm = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      sp += (res.ideal_best[j] - v[i][j]) * (res.ideal_best[j] - v[i][j]);
      sm += (res.ideal_worst[j] - v[i][j]) * (res.ideal_worst[j] - v[i][j]);
    }
    res.sep_best[i] = std::sqrt(sp);
    res.sep_worst[i] = std::sqrt(sm);
    const double denom = res.sep_best[i] + res.sep_worst[i];
    // all alternatives identical in every criterion: 0.5 by convention
    res.closeness[i] = (denom == 0.0) ? 0.5 : res.sep_worst[i] / denom;
  }
  res.ranking.resize(m);
  std::iota(res.ranking.begin(), res.ranking.end(), 0);
  std::stable_sort(res.ranking.begin(), res.ranking.end(), [&](std::size_t a, std::size_t b) {
    if (res.closeness[a] != res.closeness[b]) return res.closeness[a] > res.closeness[b];
    return a < b;
  });
  return res;
}

inline TopsisResult topsis_rank(const DecisionMatrix& dm, const std::vector<double>& weights) {
  const Matrix r = topsis_normalize(dm);
  const Matrix v = topsis_apply_weights(r, weights);
  TopsisResult res = topsis_score(v);
  res.normalized = r;
  return res;
}

struct RankedFood {
  std::size_t row = 0;  // row index in the affectivity table
  double closeness = 0.0;
};

// Top-k alternatives by closeness; k larger than the table clamps with a
// warning flag on the result.
struct RankFoodsResult {
  std::vector<RankedFood> top;
  TopsisResult full;
  bool k_clamped = false;
};

inline RankFoodsResult rank_foods(const DecisionMatrix& affectivity,
                                  const std::vector<double>& weights, std::size_t k = 5) {
  RankFoodsResult out;
  out.full = topsis_rank(affectivity, weights);
  std::size_t kk = k;
  if (kk > affectivity.alternatives()) {
    kk = affectivity.alternatives();
    out.k_clamped = true;
  }
  for (std::size_t i = 0; i < kk; ++i)
    out.top.push_back({out.full.ranking[i], out.full.closeness[out.full.ranking[i]]});
  return out;
}

}  // namespace amrp
