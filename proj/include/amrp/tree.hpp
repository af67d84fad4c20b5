#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "amrp/rng.hpp"

namespace amrp {

// binary CART node; leaves carry the class-1 fraction of their training rows
struct TreeNode {
  int feature = -1;          // -1 marks a leaf
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  double class1_fraction = 0.0;
};

struct DecisionTree {
  std::vector<TreeNode> nodes;

  double leaf_fraction(const std::vector<double>& x) const {
    std::int32_t at = 0;
    while (nodes[at].feature >= 0)
      at = (x[static_cast<std::size_t>(nodes[at].feature)] <= nodes[at].threshold) ? nodes[at].left
                                                                                   : nodes[at].right;
    return nodes[at].class1_fraction;
  }
  int vote(const std::vector<double>& x) const { return leaf_fraction(x) > 0.5 ? 1 : 0; }
};

namespace detail {

struct CartConfig {
  std::size_t max_depth = 64;
  std::size_t min_split = 2;
  std::size_t features_per_node = 0;  // 0 = all
};

// rows are (pointer-to-features, label) resolved through a flat matrix
struct CartData {
  const double* x = nullptr;  // row-major n x d
  const int* y = nullptr;
  std::size_t n = 0;
  std::size_t d = 0;
  double at(std::size_t row, std::size_t col) const { return x[row * d + col]; }
};

inline double gini_impurity(std::size_t pos, std::size_t total) {
  if (total == 0) return 0.0;
  const double p = static_cast<double>(pos) / static_cast<double>(total);
  return 2.0 * p * (1.0 - p);
}

struct SplitChoice {
  bool found = false;
  std::size_t feature = 0;
  double threshold = 0.0;
  double impurity = 1e300;  // weighted child Gini
};

inline SplitChoice best_split(const CartData& data, const std::vector<std::size_t>& rows,
                              const std::vector<std::size_t>& features) {
  SplitChoice best;
  const std::size_t m = rows.size();
  std::size_t pos_total = 0;
  for (std::size_t r : rows) pos_total += static_cast<std::size_t>(data.y[r]);

  std::vector<std::pair<double, int>> vals(m);
  for (std::size_t f : features) {
    for (std::size_t i = 0; i < m; ++i) vals[i] = {data.at(rows[i], f), data.y[rows[i]]};
    std::sort(vals.begin(), vals.end());
    std::size_t pos_left = 0;
    for (std::size_t i = 0; i + 1 < m; ++i) {
      pos_left += static_cast<std::size_t>(vals[i].second);
      if (vals[i].first == vals[i + 1].first) continue;
      const std::size_t nl = i + 1, nr = m - nl;
      const double w = (static_cast<double>(nl) * gini_impurity(pos_left, nl) +
                        static_cast<double>(nr) * gini_impurity(pos_total - pos_left, nr)) /
                       static_cast<double>(m);
      const double thr = vals[i].first + 0.5 * (vals[i + 1].first - vals[i].first);
      if (w < best.impurity - 1e-15 ||
          (std::abs(w - best.impurity) <= 1e-15 && best.found &&
           (f < best.feature || (f == best.feature && thr < best.threshold)))) {
        best.found = true;
        best.feature = f;
        best.threshold = thr;
        best.impurity = w;
      }
    }
  }
  return best;
}

inline std::int32_t grow_cart(DecisionTree& tree, const CartData& data,
                              std::vector<std::size_t>& rows, std::size_t depth,
                              const CartConfig& cfg, Rng& rng) {
  const std::size_t m = rows.size();
  std::size_t pos = 0;
  for (std::size_t r : rows) pos += static_cast<std::size_t>(data.y[r]);

  const std::int32_t id = static_cast<std::int32_t>(tree.nodes.size());
  tree.nodes.push_back({});
  tree.nodes[id].class1_fraction = m ? static_cast<double>(pos) / static_cast<double>(m) : 0.0;

  if (pos == 0 || pos == m || m < cfg.min_split || depth >= cfg.max_depth) return id;

  // feature subsample without replacement, drawn from the canonical range
  std::vector<std::size_t> feats;
  if (cfg.features_per_node == 0 || cfg.features_per_node >= data.d) {
    feats.resize(data.d);
    for (std::size_t f = 0; f < data.d; ++f) feats[f] = f;
  } else {
    std::vector<std::size_t> all(data.d);
    for (std::size_t f = 0; f < data.d; ++f) all[f] = f;
    for (std::size_t k = 0; k < cfg.features_per_node; ++k) {
      const std::size_t j = k + static_cast<std::size_t>(rng.below(data.d - k));
      std::swap(all[k], all[j]);
    }
    feats.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(cfg.features_per_node));
    std::sort(feats.begin(), feats.end());
  }

  const SplitChoice split = best_split(data, rows, feats);
  if (!split.found) return id;

  std::vector<std::size_t> left, right;
  left.reserve(m);
  right.reserve(m);
  for (std::size_t r : rows)
    (data.at(r, split.feature) <= split.threshold ? left : right).push_back(r);
  if (left.empty() || right.empty()) return id;

  rows.clear();
  rows.shrink_to_fit();
  const std::int32_t l = grow_cart(tree, data, left, depth + 1, cfg, rng);
  const std::int32_t r = grow_cart(tree, data, right, depth + 1, cfg, rng);
  tree.nodes[id].feature = static_cast<int>(split.feature);
  tree.nodes[id].threshold = split.threshold;
  tree.nodes[id].left = l;
  tree.nodes[id].right = r;
  return id;
}

}  // namespace detail

}  // namespace amrp
