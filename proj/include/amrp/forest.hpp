#pragma once

#include <cmath>
#include <vector>

#include "amrp/tree.hpp"

namespace amrp {

// Bagged CART forest, Gini splits, sqrt(d) features per node.
struct ForestModel {
  std::vector<DecisionTree> trees;

  // fraction of trees voting class 1
  double score(const std::vector<double>& x) const {
    std::size_t votes = 0;
    for (const auto& t : trees) votes += static_cast<std::size_t>(t.vote(x));
    return static_cast<double>(votes) / static_cast<double>(trees.size());
  }
};

struct ForestConfig {
  std::size_t tree_count = 100;
  std::size_t max_depth = 64;
};

// x is row-major (n x d) in canonical row order; sampling is index-based so
// permuting the caller's rows cannot change the model.
inline ForestModel train_forest(const std::vector<double>& x, const std::vector<int>& y,
                                std::size_t n, std::size_t d, const ForestConfig& cfg,
                                std::uint64_t seed) {
  detail::CartData data{x.data(), y.data(), n, d};
  detail::CartConfig cart;
  cart.max_depth = cfg.max_depth;
  cart.features_per_node =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(d))));

  ForestModel model;
  model.trees.reserve(cfg.tree_count);
  for (std::size_t t = 0; t < cfg.tree_count; ++t) {
    Rng rng(derive_seed(seed, 31, t));
    std::vector<std::size_t> bootstrap(n);
    for (auto& r : bootstrap) r = static_cast<std::size_t>(rng.below(n));
    std::sort(bootstrap.begin(), bootstrap.end());  // fixed summation order
    DecisionTree tree;
    detail::grow_cart(tree, data, bootstrap, 0, cart, rng);
    model.trees.push_back(std::move(tree));
  }
  return model;
}

}  // namespace amrp
