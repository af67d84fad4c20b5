#pragma once

#include <array>
#include <atomic>
#include <string>
#include <thread>
#include <vector>

#include "amrp/classifier.hpp"
#include "amrp/metrics.hpp"

namespace amrp {

// Modal label; ties broken by the stronger mean confidence, then by label 0.
// Scores, when given, are class-1 affinities aligned with the labels.
inline int majority_vote(const std::vector<int>& labels, const std::vector<double>* scores = nullptr) {
  if (labels.empty()) fail(Errc::empty_input, "majority_vote of no votes");
  std::size_t ones = 0;
  for (int l : labels) ones += static_cast<std::size_t>(l);
  const std::size_t zeros = labels.size() - ones;
  if (ones > zeros) return 1;
  if (zeros > ones) return 0;
  if (scores && scores->size() == labels.size()) {
    double conf1 = 0.0, conf0 = 0.0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == 1) conf1 += (*scores)[i];
      else conf0 += 1.0 - (*scores)[i];
    }
    conf1 /= static_cast<double>(ones);
    conf0 /= static_cast<double>(zeros);
    if (conf1 > conf0) return 1;
    if (conf0 > conf1) return 0;
  }
  return 0;
}

// 3 feature methods x 4 classifier families, trained on one shared split.
struct TrainedEnsemble {
  std::string target;
  std::array<std::array<ClassifierModel, kClassifierKindCount>, kFeatureMethodCount> models;
  std::uint64_t seed = 0;

  const ClassifierModel& model(FeatureMethod m, ClassifierKind k) const {
    return models[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)];
  }
};

// per-method verdict with the mean confidence of the models that voted it
struct MethodVerdict {
  int label = 0;
  double score = 0.0;  // class-1 affinity of the winning voters
};

struct HierarchicalPrediction {
  int label = 0;
  std::array<MethodVerdict, kFeatureMethodCount> per_method;
  double ranking_score = 0.0;  // mean of the winning level-1 scores
};

inline MethodVerdict level1_vote(const TrainedEnsemble& ens, FeatureMethod method,
                                 const std::vector<double>& x) {
  std::vector<int> labels;
  std::vector<double> scores;
  for (std::size_t k = 0; k < kClassifierKindCount; ++k) {
    const auto pred = ens.model(method, static_cast<ClassifierKind>(k)).predict(x);
    labels.push_back(pred.label);
    scores.push_back(pred.score);
  }
  MethodVerdict v;
  v.label = majority_vote(labels, &scores);
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (labels[k] != v.label) continue;
    sum += scores[k];
    ++count;
  }
  v.score = count ? sum / static_cast<double>(count) : 0.5;
  return v;
}

// Level 1: majority over the four families per method. Level 2: majority
// over the three method verdicts. All three methods are required.
inline HierarchicalPrediction hierarchical_predict(
    const TrainedEnsemble& ens, const std::array<const std::vector<double>*, kFeatureMethodCount>& x) {
  HierarchicalPrediction out;
  std::vector<int> verdicts;
  std::vector<double> verdict_scores;
  for (std::size_t m = 0; m < kFeatureMethodCount; ++m) {
    if (x[m] == nullptr)
      fail(Errc::missing_method, std::string("no feature vector for method ") +
                                     method_name(static_cast<FeatureMethod>(m)));
    out.per_method[m] = level1_vote(ens, static_cast<FeatureMethod>(m), *x[m]);
    verdicts.push_back(out.per_method[m].label);
    verdict_scores.push_back(out.per_method[m].score);
  }
  out.label = majority_vote(verdicts, &verdict_scores);
  double sum = 0.0;
  for (const auto& v : out.per_method) sum += v.score;
  out.ranking_score = sum / static_cast<double>(kFeatureMethodCount);
  return out;
}

// Trains the 12 base models; the per-model work is independent and runs on a
// small pool. Model content depends only on (data, hyperparams, seed).
inline TrainedEnsemble train_ensemble(const std::array<LabeledDataset, kFeatureMethodCount>& train,
                                      const Hyperparams& hp, std::uint64_t seed,
                                      std::size_t parallelism = 0) {
  TrainedEnsemble ens;
  ens.target = train[0].target;
  ens.seed = seed;
  for (const auto& t : train) {
    if (t.size() != train[0].size())
      fail(Errc::misaligned_rows, "method datasets must hold the same epochs");
  }

  struct Job {
    std::size_t m, k;
  };
  std::vector<Job> jobs;
  for (std::size_t m = 0; m < kFeatureMethodCount; ++m)
    for (std::size_t k = 0; k < kClassifierKindCount; ++k) jobs.push_back({m, k});

  const std::size_t workers = parallelism ? parallelism
                                          : std::max<std::size_t>(1, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  auto run = [&]() {
    for (;;) {
      const std::size_t j = next.fetch_add(1);
      if (j >= jobs.size()) return;
      const auto [m, k] = jobs[j];
      ens.models[m][k] =
          train_classifier(static_cast<ClassifierKind>(k), train[m], hp,
                           derive_seed(seed, 17000 + m, k));
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  return ens;
}

struct EnsembleEvaluation {
  MetricsReport report;
  std::vector<int> predicted;
  std::vector<double> ranking_scores;
};

// Test rows must be aligned across methods (same epochs, same labels).
inline EnsembleEvaluation evaluate_ensemble(const TrainedEnsemble& ens,
                                            const std::array<LabeledDataset, kFeatureMethodCount>& test) {
  const std::size_t n = test[0].size();
  for (const auto& t : test) {
    if (t.size() != n) fail(Errc::misaligned_rows, "method test sets differ in size");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (test[1].rows[i].label != test[0].rows[i].label ||
        test[2].rows[i].label != test[0].rows[i].label)
      fail(Errc::misaligned_rows, "row " + std::to_string(i) + " labels disagree across methods");
  }
  if (n == 0) fail(Errc::empty_input, "empty test set");

  EnsembleEvaluation out;
  std::vector<int> actual(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::array<const std::vector<double>*, kFeatureMethodCount> x = {
        &test[0].rows[i].features, &test[1].rows[i].features, &test[2].rows[i].features};
    const auto pred = hierarchical_predict(ens, x);
    out.predicted.push_back(pred.label);
    out.ranking_scores.push_back(pred.ranking_score);
    actual[i] = test[0].rows[i].label;
  }
  const auto cm = confusion(out.predicted, actual, 1);
  double auc_value = 0.5;
  bool both = false;
  {
    std::size_t pos = 0;
    for (int a : actual) pos += static_cast<std::size_t>(a);
    both = pos > 0 && pos < actual.size();
  }
  if (both) auc_value = auc(out.ranking_scores, actual);
  out.report = make_report(cm, auc_value);
  return out;
}

}  // namespace amrp
