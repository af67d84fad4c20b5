#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <string>
#include <vector>

#include "amrp/features.hpp"
#include "amrp/rng.hpp"

namespace amrp {

struct RowProvenance {
  std::size_t subject = 0;
  std::size_t trial = 0;  // food index
  std::size_t epoch = 0;  // window within the trial
};

struct LabeledRow {
  std::vector<double> features;
  int label = 0;
  RowProvenance origin;
};

struct LabeledDataset {
  FeatureMethod method = FeatureMethod::stft;
  std::string target;  // like / excitement / feelings
  std::vector<LabeledRow> rows;

  std::size_t size() const { return rows.size(); }
  std::size_t dim() const { return rows.empty() ? 0 : rows[0].features.size(); }

  void validate() const {
    for (const auto& r : rows) {
      if (r.features.size() != dim()) fail(Errc::dimension_mismatch, "ragged feature rows");
      if (r.label != 0 && r.label != 1) fail(Errc::out_of_range_label, "labels must be binary");
    }
  }
};

// Indices ordered lexicographically by (features, label). All learners sample
// and accumulate through this ordering, which makes training independent of
// the caller's row order.
inline std::vector<std::size_t> canonical_order(const std::vector<LabeledRow>& rows) {
  std::vector<std::size_t> idx(rows.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&rows](std::size_t a, std::size_t b) {
    if (rows[a].features != rows[b].features) return rows[a].features < rows[b].features;
    return rows[a].label < rows[b].label;
  });
  return idx;
}

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Stratified index split: train size floor(n*fraction) with at least one test
// row, per-class quotas rounded by largest remainder. Every class must land
// at least one training row; a one-class test side is accepted.
inline SplitIndices stratified_split_indices(const std::vector<int>& labels, double train_fraction,
                                             std::uint64_t seed) {
  if (labels.empty()) fail(Errc::empty_input, "cannot split an empty dataset");
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    fail(Errc::config_error, "train fraction must lie in (0, 1)");

  const std::size_t n = labels.size();
  std::size_t train_total = static_cast<std::size_t>(static_cast<double>(n) * train_fraction);
  if (train_total >= n) train_total = n - 1;  // keep at least one test row

  std::array<std::vector<std::size_t>, 2> by_class;
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] != 0 && labels[i] != 1) fail(Errc::out_of_range_label, "labels must be binary");
    by_class[static_cast<std::size_t>(labels[i])].push_back(i);
  }

  // per-class quota: floor, then distribute the remainder by largest fraction
  std::array<double, 2> exact{};
  std::array<std::size_t, 2> quota{};
  std::size_t assigned = 0;
  for (int c = 0; c < 2; ++c) {
    exact[c] = static_cast<double>(by_class[c].size()) * static_cast<double>(train_total) /
               static_cast<double>(n);
    quota[c] = static_cast<std::size_t>(exact[c]);
    assigned += quota[c];
  }
  while (assigned < train_total) {
    const int c = (exact[0] - static_cast<double>(quota[0]) >=
                   exact[1] - static_cast<double>(quota[1]))
                      ? 0
                      : 1;
    if (quota[c] < by_class[c].size()) ++quota[c];
    else ++quota[1 - c];
    ++assigned;
  }
  for (int c = 0; c < 2; ++c) {
    if (!by_class[c].empty() && quota[c] == 0)
      fail(Errc::empty_class, std::string("class ") + std::to_string(c) +
                                  " would have no training rows at this fraction");
    if (quota[c] > by_class[c].size()) quota[c] = by_class[c].size();
  }

  Rng rng(derive_seed(seed, 7701));
  SplitIndices out;
  for (int c = 0; c < 2; ++c) {
    auto idx = by_class[c];
    rng.shuffle(idx);
    for (std::size_t k = 0; k < idx.size(); ++k) (k < quota[c] ? out.train : out.test).push_back(idx[k]);
  }
  return out;
}

inline std::pair<LabeledDataset, LabeledDataset> train_test_split(const LabeledDataset& data,
                                                                  double train_fraction,
                                                                  std::uint64_t seed) {
  data.validate();
  std::vector<int> labels(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) labels[i] = data.rows[i].label;
  const auto idx = stratified_split_indices(labels, train_fraction, seed);

  LabeledDataset train, test;
  train.method = test.method = data.method;
  train.target = test.target = data.target;
  for (std::size_t i : idx.train) train.rows.push_back(data.rows[i]);
  for (std::size_t i : idx.test) test.rows.push_back(data.rows[i]);
  return {std::move(train), std::move(test)};
}

}  // namespace amrp
