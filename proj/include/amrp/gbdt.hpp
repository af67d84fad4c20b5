#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "amrp/common.hpp"

namespace amrp {

// regression tree stored as a full array; internal nodes split, leaves carry
// the shrunken Newton step
struct BoostNode {
  int feature = -1;
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  double value = 0.0;
};

struct BoostTree {
  std::vector<BoostNode> nodes;

  double eval(const double* x) const {
    std::int32_t at = 0;
    while (nodes[at].feature >= 0)
      at = x[nodes[at].feature] <= nodes[at].threshold ? nodes[at].left : nodes[at].right;
    return nodes[at].value;
  }
};

// Second-order gradient boosting on regression trees with logistic loss.
struct GbdtModel {
  double base_score = 0.0;  // prior log-odds
  std::vector<BoostTree> trees;

  double additive_score(const std::vector<double>& x) const {
    double f = base_score;
    for (const auto& t : trees) f += t.eval(x.data());
    return f;
  }
};

struct GbdtConfig {
  std::size_t rounds = 100;
  std::size_t depth = 3;
  double learning_rate = 0.1;
  double l2_lambda = 1.0;
  double min_gain = 1e-12;
};

namespace detail {

struct GbdtSplit {
  bool found = false;
  int feature = -1;
  double threshold = 0.0;
  double gain = 0.0;
};

}  // namespace detail

// x row-major (n x d) in canonical order; y in {0,1}.
inline GbdtModel train_gbdt(const std::vector<double>& x, const std::vector<int>& y, std::size_t n,
                            std::size_t d, const GbdtConfig& cfg) {
  GbdtModel model;
  std::size_t pos = 0;
  for (int v : y) pos += static_cast<std::size_t>(v);
  const double p0 = std::min(1.0 - 1e-6, std::max(1e-6, static_cast<double>(pos) / static_cast<double>(n)));
  model.base_score = std::log(p0 / (1.0 - p0));

  // presorted row order per feature, shared across rounds
  std::vector<std::vector<std::uint32_t>> order(d, std::vector<std::uint32_t>(n));
  for (std::size_t f = 0; f < d; ++f) {
    auto& idx = order[f];
    for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<std::uint32_t>(i);
    std::stable_sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
      return x[a * d + f] < x[b * d + f];
    });
  }

  std::vector<double> margin(n, model.base_score);
  std::vector<double> g(n), h(n);

  for (std::size_t round = 0; round < cfg.rounds; ++round) {
    for (std::size_t i = 0; i < n; ++i) {
      const double p = 1.0 / (1.0 + std::exp(-margin[i]));
      g[i] = p - static_cast<double>(y[i]);
      h[i] = std::max(1e-16, p * (1.0 - p));
    }

    BoostTree tree;
    tree.nodes.push_back({});
    std::vector<std::int32_t> node_of(n, 0);
    std::vector<std::int32_t> active = {0};

    std::vector<double> node_g(1, 0.0), node_h(1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      node_g[0] += g[i];
      node_h[0] += h[i];
    }

    for (std::size_t level = 0; level < cfg.depth && !active.empty(); ++level) {
      const std::size_t node_count = tree.nodes.size();
      std::vector<detail::GbdtSplit> best(node_count);
      std::vector<double> run_g(node_count), run_h(node_count);
      std::vector<std::size_t> run_n(node_count);
      std::vector<double> prev_val(node_count);
      std::vector<bool> has_prev(node_count);

      for (std::size_t f = 0; f < d; ++f) {
        for (std::int32_t nid : active) {
          run_g[nid] = run_h[nid] = 0.0;
          run_n[nid] = 0;
          has_prev[nid] = false;
        }
        for (std::uint32_t i : order[f]) {
          const std::int32_t nid = node_of[i];
          if (nid < 0) continue;
          const double v = x[i * d + f];
          if (has_prev[nid] && v > prev_val[nid] && run_n[nid] > 0) {
            const double gl = run_g[nid], hl = run_h[nid];
            const double gr = node_g[nid] - gl, hr = node_h[nid] - hl;
            const double gain = gl * gl / (hl + cfg.l2_lambda) + gr * gr / (hr + cfg.l2_lambda) -
                                node_g[nid] * node_g[nid] / (node_h[nid] + cfg.l2_lambda);
            auto& b = best[nid];
            if (gain > b.gain + 1e-15 && gain > cfg.min_gain) {
              b.found = true;
              b.feature = static_cast<int>(f);
              b.threshold = prev_val[nid] + 0.5 * (v - prev_val[nid]);
              b.gain = gain;
            }
          }
          run_g[nid] += g[i];
          run_h[nid] += h[i];
          ++run_n[nid];
          prev_val[nid] = v;
          has_prev[nid] = true;
        }
      }

      // materialize the chosen splits
      std::vector<std::int32_t> next_active;
      for (std::int32_t nid : active) {
        if (!best[nid].found) continue;
        const std::int32_t l = static_cast<std::int32_t>(tree.nodes.size());
        tree.nodes.push_back({});
        const std::int32_t r = static_cast<std::int32_t>(tree.nodes.size());
        tree.nodes.push_back({});
        tree.nodes[nid].feature = best[nid].feature;
        tree.nodes[nid].threshold = best[nid].threshold;
        tree.nodes[nid].left = l;
        tree.nodes[nid].right = r;
        next_active.push_back(l);
        next_active.push_back(r);
      }
      node_g.resize(tree.nodes.size(), 0.0);
      node_h.resize(tree.nodes.size(), 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const std::int32_t nid = node_of[i];
        if (nid < 0 || tree.nodes[nid].feature < 0) continue;
        const std::int32_t child = x[i * d + static_cast<std::size_t>(tree.nodes[nid].feature)] <=
                                           tree.nodes[nid].threshold
                                       ? tree.nodes[nid].left
                                       : tree.nodes[nid].right;
        node_of[i] = child;
        node_g[child] += g[i];
        node_h[child] += h[i];
      }
      active = std::move(next_active);
    }

    // leaf weights: Newton step with the L2 penalty, shrunk by the learning rate
    for (std::size_t nid = 0; nid < tree.nodes.size(); ++nid) {
      if (tree.nodes[nid].feature >= 0) continue;
      tree.nodes[nid].value =
          -cfg.learning_rate * node_g[nid] / (node_h[nid] + cfg.l2_lambda);
    }

    for (std::size_t i = 0; i < n; ++i) margin[i] += tree.nodes[node_of[i]].value;
    model.trees.push_back(std::move(tree));
  }
  return model;
}

}  // namespace amrp
