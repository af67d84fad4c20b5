#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "amrp/common.hpp"

namespace amrp {

struct ConfusionMatrix {
  long tp = 0;
  long tn = 0;
  long fp = 0;
  long fn = 0;
  int positive_class = 1;

  long n() const { return tp + tn + fp + fn; }
};

inline ConfusionMatrix confusion(const std::vector<int>& predicted, const std::vector<int>& actual,
                                 int positive_class = 1) {
  if (predicted.size() != actual.size())
    fail(Errc::length_mismatch, std::to_string(predicted.size()) + " predictions vs " +
                                    std::to_string(actual.size()) + " actuals");
  if (predicted.empty()) fail(Errc::empty_input, "no labels");
  ConfusionMatrix cm;
  cm.positive_class = positive_class;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const bool pred_pos = predicted[i] == positive_class;
    const bool act_pos = actual[i] == positive_class;
    if (pred_pos && act_pos) ++cm.tp;
    else if (!pred_pos && !act_pos) ++cm.tn;
    else if (pred_pos) ++cm.fp;
    else ++cm.fn;
  }
  return cm;
}

inline double accuracy(const ConfusionMatrix& cm) {
  return static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.n());
}

inline double misclassification(const ConfusionMatrix& cm) {
  return static_cast<double>(cm.fp + cm.fn) / static_cast<double>(cm.n());
}

inline double f1(const ConfusionMatrix& cm) {
  if (cm.tp + cm.fp == 0 || cm.tp + cm.fn == 0)
    fail(Errc::undefined_f1, "no predicted or no actual positives");
  // equals 2PR/(P+R) with P = tp/(tp+fp), R = tp/(tp+fn)
  return 2.0 * static_cast<double>(cm.tp) / static_cast<double>(2 * cm.tp + cm.fp + cm.fn);
}

// Probability that a random positive outranks a random negative, ties at 1/2.
// Identical to the trapezoidal area under the ROC curve.
inline double auc(const std::vector<double>& scores, const std::vector<int>& actual) {
  if (scores.size() != actual.size()) fail(Errc::length_mismatch, "scores vs labels");
  if (scores.empty()) fail(Errc::empty_input, "no scores");
  std::size_t npos = 0;
  for (int a : actual) npos += (a == 1);
  const std::size_t nneg = actual.size() - npos;
  if (npos == 0 || nneg == 0) fail(Errc::single_class, "AUC needs both classes");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // average ranks over tie groups
  double rank_sum_pos = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k)
      if (actual[order[k]] == 1) rank_sum_pos += avg_rank;
    i = j + 1;
  }
  return (rank_sum_pos - static_cast<double>(npos) * (static_cast<double>(npos) + 1.0) / 2.0) /
         (static_cast<double>(npos) * static_cast<double>(nneg));
}

struct MetricsReport {
  ConfusionMatrix confusion;
  double accuracy = 0.0;
  double misclassification = 0.0;
  double f1 = 0.0;
  double auc = 0.0;
};

inline MetricsReport make_report(const ConfusionMatrix& cm, double auc_value) {
  MetricsReport r;
  r.confusion = cm;
  r.accuracy = accuracy(cm);
  r.misclassification = misclassification(cm);
  r.f1 = (cm.tp + cm.fp == 0 || cm.tp + cm.fn == 0) ? 0.0 : f1(cm);
  r.auc = auc_value;
  return r;
}

}  // namespace amrp
