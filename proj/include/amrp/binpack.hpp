#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "amrp/common.hpp"

namespace amrp {

// Classic minimum-bin formulation: weights in (0, c], unit capacity default.
struct PackingInstance {
  std::vector<double> weights;
  double capacity = 1.0;

  void validate() const {
    for (double w : weights) {
      if (!(w > 0.0)) fail(Errc::item_exceeds_capacity, "weights must be positive");
      if (w > capacity + 1e-12)
        fail(Errc::item_exceeds_capacity, "item weight " + std::to_string(w) + " exceeds capacity");
    }
  }
};

struct PackingResult {
  std::size_t bin_count = 0;
  std::vector<std::size_t> assignment;  // item -> bin id
  bool exact = false;                   // true when branch-and-bound proved optimality
};

namespace detail {

struct BnbState {
  const std::vector<double>* w = nullptr;       // sorted decreasing
  double capacity = 1.0;
  std::vector<double> load;                     // open bin loads
  std::vector<std::size_t> assign;              // per sorted item
  std::vector<std::size_t> best_assign;
  std::size_t best = 0;
  double remaining = 0.0;
};

inline void bnb(BnbState& st, std::size_t item) {
  const auto& w = *st.w;
  if (item == w.size()) {
    if (st.load.size() < st.best) {
      st.best = st.load.size();
      st.best_assign = st.assign;
    }
    return;
  }
  // lower bound: bins already open + volume still to place
  double slack = 0.0;
  for (double l : st.load) slack += st.capacity - l;
  const double overflow = st.remaining - slack;
  std::size_t lb = st.load.size();
  if (overflow > 1e-12)
    lb += static_cast<std::size_t>(std::ceil(overflow / st.capacity - 1e-12));
  if (lb >= st.best) return;

  const double wi = w[item];
  st.remaining -= wi;
  // try each open bin; skip duplicate loads to prune symmetric branches
  for (std::size_t b = 0; b < st.load.size(); ++b) {
    if (st.load[b] + wi > st.capacity + 1e-12) continue;
    bool dup = false;
    for (std::size_t b2 = 0; b2 < b; ++b2)
      if (st.load[b2] == st.load[b]) { dup = true; break; }
    if (dup) continue;
    st.load[b] += wi;
    st.assign[item] = b;
    bnb(st, item + 1);
    st.load[b] -= wi;
  }
  // open a new bin
  if (st.load.size() + 1 < st.best) {
    st.load.push_back(wi);
    st.assign[item] = st.load.size() - 1;
    bnb(st, item + 1);
    st.load.pop_back();
  }
  st.remaining += wi;
}

}  // namespace detail

// First-fit decreasing heuristic.
inline PackingResult pack_first_fit_decreasing(const PackingInstance& inst) {
  inst.validate();
  const std::size_t n = inst.weights.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return inst.weights[a] > inst.weights[b]; });
  PackingResult res;
  res.assignment.assign(n, 0);
  std::vector<double> load;
  for (std::size_t i : order) {
    const double w = inst.weights[i];
    bool placed = false;
    for (std::size_t b = 0; b < load.size(); ++b) {
      if (load[b] + w <= inst.capacity + 1e-12) {
        load[b] += w;
        res.assignment[i] = b;
        placed = true;
        break;
      }
    }
    if (!placed) {
      load.push_back(w);
      res.assignment[i] = load.size() - 1;
    }
  }
  res.bin_count = load.size();
  res.exact = false;
  return res;
}

// Minimum number of unit-capacity bins. Exact branch-and-bound up to
// exact_limit items, first-fit decreasing beyond that.
inline PackingResult pack_min_bins(const PackingInstance& inst, std::size_t exact_limit = 12) {
  inst.validate();
  const std::size_t n = inst.weights.size();
  if (n == 0) return PackingResult{0, {}, true};
  if (n > exact_limit) return pack_first_fit_decreasing(inst);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return inst.weights[a] > inst.weights[b]; });
  std::vector<double> sorted(n);
  for (std::size_t i = 0; i < n; ++i) sorted[i] = inst.weights[order[i]];

  PackingResult ffd = pack_first_fit_decreasing(inst);

  detail::BnbState st;
  st.w = &sorted;
  st.capacity = inst.capacity;
  st.assign.assign(n, 0);
  st.best = ffd.bin_count + 1;  // FFD is a valid incumbent; search below it
  st.remaining = std::accumulate(sorted.begin(), sorted.end(), 0.0);
  detail::bnb(st, 0);

  PackingResult res;
  res.exact = true;
  if (st.best <= ffd.bin_count) {
    res.bin_count = st.best;
    res.assignment.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) res.assignment[order[i]] = st.best_assign[i];
  } else {
    res.bin_count = ffd.bin_count;
    res.assignment = ffd.assignment;
  }
  return res;
}

}  // namespace amrp
