#pragma once

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "amrp/adaboost.hpp"
#include "amrp/dataset.hpp"
#include "amrp/forest.hpp"
#include "amrp/gbdt.hpp"
#include "amrp/svm.hpp"

namespace amrp {

enum class ClassifierKind { forest = 0, max_margin = 1, adaptive_boost = 2, gradient_boost = 3 };

constexpr std::size_t kClassifierKindCount = 4;

inline const char* classifier_name(ClassifierKind k) {
  switch (k) {
    case ClassifierKind::forest: return "forest";
    case ClassifierKind::max_margin: return "max-margin";
    case ClassifierKind::adaptive_boost: return "adaptive-boost";
    case ClassifierKind::gradient_boost: return "gradient-boost";
  }
  return "?";
}

inline ClassifierKind classifier_from_name(const std::string& s) {
  for (std::size_t i = 0; i < kClassifierKindCount; ++i)
    if (s == classifier_name(static_cast<ClassifierKind>(i)))
      return static_cast<ClassifierKind>(i);
  fail(Errc::parse_error, "unknown classifier kind: " + s);
}

struct Hyperparams {
  ForestConfig forest;
  SvmConfig svm;
  AdaBoostConfig adaboost;
  GbdtConfig gbdt;
};

// degenerate model for single-class training sets
struct ConstantModel {
  int label = 0;
};

struct Prediction {
  int label = 0;
  double score = 0.0;  // class-1 affinity in [0, 1]
};

inline double logistic(double f) { return 1.0 / (1.0 + std::exp(-f)); }

class ClassifierModel {
 public:
  ClassifierKind kind = ClassifierKind::forest;
  std::size_t feature_dim = 0;
  std::uint64_t training_seed = 0;
  bool constant = false;  // flagged single-class degenerate
  std::variant<ForestModel, SvmModel, AdaBoostModel, GbdtModel, ConstantModel> impl;

  Prediction predict(const std::vector<double>& x) const {
    if (x.size() != feature_dim)
      fail(Errc::dimension_mismatch, "vector has " + std::to_string(x.size()) +
                                         " features, model expects " + std::to_string(feature_dim));
    double score = 0.0;
    if (const auto* c = std::get_if<ConstantModel>(&impl)) {
      score = static_cast<double>(c->label);
    } else if (const auto* f = std::get_if<ForestModel>(&impl)) {
      score = f->score(x);
    } else if (const auto* s = std::get_if<SvmModel>(&impl)) {
      score = logistic(s->decision(x));
    } else if (const auto* a = std::get_if<AdaBoostModel>(&impl)) {
      score = logistic(a->additive_score(x));
    } else if (const auto* g = std::get_if<GbdtModel>(&impl)) {
      score = logistic(g->additive_score(x));
    }
    return Prediction{score >= 0.5 ? 1 : 0, score};
  }
};

// Trains one model of the requested family. Rows are reindexed into the
// canonical order first, so the result is invariant to row permutations.
inline ClassifierModel train_classifier(ClassifierKind kind, const LabeledDataset& train,
                                        const Hyperparams& hp, std::uint64_t seed) {
  if (train.rows.empty()) fail(Errc::empty_input, "empty training set");
  train.validate();

  ClassifierModel model;
  model.kind = kind;
  model.feature_dim = train.dim();
  model.training_seed = seed;

  std::size_t pos = 0;
  for (const auto& r : train.rows) pos += static_cast<std::size_t>(r.label);
  if (pos == 0 || pos == train.rows.size()) {
    model.constant = true;
    model.impl = ConstantModel{pos == 0 ? 0 : 1};
    return model;
  }

  const auto order = canonical_order(train.rows);
  const std::size_t n = train.rows.size();
  const std::size_t d = train.dim();
  std::vector<double> x(n * d);
  std::vector<int> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = train.rows[order[i]];
    std::copy(row.features.begin(), row.features.end(), x.begin() + static_cast<std::ptrdiff_t>(i * d));
    y[i] = row.label;
  }

  switch (kind) {
    case ClassifierKind::forest:
      model.impl = train_forest(x, y, n, d, hp.forest, seed);
      break;
    case ClassifierKind::max_margin: {
      // z-score the matrix; the scaler travels with the model
      SvmModel scaler;
      scaler.feature_mean.assign(d, 0.0);
      scaler.feature_scale.assign(d, 1.0);
      for (std::size_t j = 0; j < d; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += x[i * d + j];
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double t = x[i * d + j] - mean;
          var += t * t;
        }
        var /= static_cast<double>(n);
        scaler.feature_mean[j] = mean;
        scaler.feature_scale[j] = var > 0.0 ? 1.0 / std::sqrt(var) : 1.0;
        for (std::size_t i = 0; i < n; ++i) x[i * d + j] = (x[i * d + j] - mean) * scaler.feature_scale[j];
      }
      SvmModel fitted = train_svm_scaled(x, y, n, d, hp.svm);
      fitted.feature_mean = std::move(scaler.feature_mean);
      fitted.feature_scale = std::move(scaler.feature_scale);
      model.impl = std::move(fitted);
      break;
    }
    case ClassifierKind::adaptive_boost:
      model.impl = train_adaboost(x, y, n, d, hp.adaboost);
      break;
    case ClassifierKind::gradient_boost:
      model.impl = train_gbdt(x, y, n, d, hp.gbdt);
      break;
  }
  return model;
}

}  // namespace amrp
