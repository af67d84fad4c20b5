#include <catch2/catch_amalgamated.hpp>

#include "amrp/dataset.hpp"
#include "amrp/model_io.hpp"
#include "amrp/synthetic.hpp"
#include "amrp/voting.hpp"

#include "test_support.hpp"

using namespace amrp;

namespace {

LabeledDataset blob_dataset(std::size_t n, std::uint64_t seed, double separation = 4.0) {
  // two Gaussian blobs in 2-D, class 1 shifted by `separation`
  LabeledDataset d;
  d.target = "like";
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    LabeledRow row;
    row.label = static_cast<int>(i % 2);
    const double shift = row.label ? separation : 0.0;
    row.features = {shift + rng.normal(), shift + rng.normal()};
    d.rows.push_back(std::move(row));
  }
  return d;
}

double training_accuracy(const ClassifierModel& m, const LabeledDataset& d) {
  std::size_t hit = 0;
  for (const auto& r : d.rows) hit += static_cast<std::size_t>(m.predict(r.features).label == r.label);
  return static_cast<double>(hit) / static_cast<double>(d.size());
}

ClassifierModel constant_model(int label) {
  ClassifierModel m;
  m.kind = ClassifierKind::forest;
  m.feature_dim = 1;
  m.constant = true;
  m.impl = ConstantModel{label};
  return m;
}

TrainedEnsemble constant_ensemble(const std::array<std::array<int, 4>, 3>& labels) {
  TrainedEnsemble ens;
  ens.target = "like";
  for (std::size_t m = 0; m < 3; ++m)
    for (std::size_t k = 0; k < 4; ++k) ens.models[m][k] = constant_model(labels[m][k]);
  return ens;
}

}  // namespace

TEST_CASE("stratified split honours the documented arithmetic", "[learn]") {
  auto d = blob_dataset(100, 1);
  auto [train, test] = train_test_split(d, 0.7, 11);
  CHECK(train.size() == 70);
  CHECK(test.size() == 30);
  std::size_t train_pos = 0, test_pos = 0;
  for (const auto& r : train.rows) train_pos += static_cast<std::size_t>(r.label);
  for (const auto& r : test.rows) test_pos += static_cast<std::size_t>(r.label);
  CHECK(std::abs(static_cast<long>(train_pos) - 35) <= 1);
  CHECK(std::abs(static_cast<long>(test_pos) - 15) <= 1);

  auto tiny = blob_dataset(10, 2);
  auto [t9, t1] = train_test_split(tiny, 0.999, 3);
  CHECK(t9.size() == 9);
  CHECK(t1.size() == 1);
}

TEST_CASE("split is disjoint, exhaustive and seed-deterministic", "[learn]") {
  auto d = blob_dataset(101, 5);
  auto [a_train, a_test] = train_test_split(d, 0.7, 42);
  auto [b_train, b_test] = train_test_split(d, 0.7, 42);
  REQUIRE(a_train.size() == b_train.size());
  CHECK(a_train.size() + a_test.size() == d.size());
  for (std::size_t i = 0; i < a_train.size(); ++i)
    CHECK(a_train.rows[i].features == b_train.rows[i].features);
  for (std::size_t i = 0; i < a_test.size(); ++i)
    CHECK(a_test.rows[i].features == b_test.rows[i].features);

  auto [c_train, c_test] = train_test_split(d, 0.7, 43);
  bool any_difference = c_train.rows[0].features != a_train.rows[0].features;
  for (std::size_t i = 1; !any_difference && i < a_train.size(); ++i)
    any_difference = c_train.rows[i].features != a_train.rows[i].features;
  CHECK(any_difference);
}

TEST_CASE("split refuses to starve a class of training rows", "[learn]") {
  LabeledDataset d;
  d.target = "like";
  for (int i = 0; i < 40; ++i) {
    LabeledRow r;
    r.label = i == 0 ? 1 : 0;  // one lonely positive
    r.features = {static_cast<double>(i)};
    d.rows.push_back(r);
  }
  try {
    train_test_split(d, 0.02, 1);  // positive-class quota rounds to zero
    FAIL("expected EmptyClass");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::empty_class);
  }
}

TEST_CASE("every classifier family separates linear blobs", "[learn]") {
  const auto d = blob_dataset(200, 7);
  const Hyperparams hp;
  for (auto kind : {ClassifierKind::forest, ClassifierKind::max_margin,
                    ClassifierKind::adaptive_boost, ClassifierKind::gradient_boost}) {
    const auto model = train_classifier(kind, d, hp, 99);
    INFO(classifier_name(kind));
    CHECK(training_accuracy(model, d) >= 0.95);
    CHECK_FALSE(model.constant);

    // a point deep inside the class-1 blob
    CHECK(model.predict({4.0, 4.0}).label == 1);
  }
}

TEST_CASE("single-class training yields a flagged constant predictor", "[learn]") {
  LabeledDataset d;
  d.target = "like";
  for (int i = 0; i < 10; ++i) {
    LabeledRow r;
    r.label = 1;
    r.features = {static_cast<double>(i), 0.0};
    d.rows.push_back(r);
  }
  const auto model = train_classifier(ClassifierKind::forest, d, {}, 1);
  CHECK(model.constant);
  const auto pred = model.predict({123.0, -5.0});
  CHECK(pred.label == 1);
  CHECK(pred.score == 1.0);
}

TEST_CASE("forest generalizes on synthetic band-power features", "[learn]") {
  const ChannelLayout layout = default_layout();
  StimulusProtocol protocol;
  protocol.food_count = 25;

  LabeledDataset d;
  d.target = "like";
  d.method = FeatureMethod::stft;
  FeatureConfig fc;
  for (std::uint64_t session = 0; session < 2; ++session) {
    auto [rec, labels] = synthesize_session(protocol, layout, default_class_profile(), 500 + session);
    for (const auto& trial : segment_trials(rec, protocol)) {
      for (const auto& epoch : window_epochs(trial, 1.0, protocol.sample_rate_hz)) {
        LabeledRow row;
        row.features = epoch_features(epoch, FeatureMethod::stft, fc, protocol.sample_rate_hz).values;
        row.label = labels.at(trial.food_index).like;
        row.origin = {static_cast<std::size_t>(session), trial.food_index, epoch.window_index};
        d.rows.push_back(std::move(row));
      }
    }
  }
  REQUIRE(d.size() == 500);

  auto [train, test] = train_test_split(d, 0.7, 21);
  const auto model = train_classifier(ClassifierKind::forest, train, {}, 77);
  std::size_t hit = 0;
  for (const auto& r : test.rows)
    hit += static_cast<std::size_t>(model.predict(r.features).label == r.label);
  CHECK(static_cast<double>(hit) / static_cast<double>(test.size()) >= 0.9);
}

TEST_CASE("prediction validates dimensions and degenerate forests vote 0", "[learn]") {
  const auto d = blob_dataset(50, 9);
  const auto model = train_classifier(ClassifierKind::forest, d, {}, 3);
  try {
    model.predict({1.0, 2.0, 3.0});
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::dimension_mismatch);
  }

  // every tree votes 0 -> score exactly 0
  ClassifierModel zeros;
  zeros.kind = ClassifierKind::forest;
  zeros.feature_dim = 1;
  ForestModel f;
  for (int t = 0; t < 5; ++t) {
    DecisionTree tree;
    tree.nodes.push_back(TreeNode{-1, 0.0, -1, -1, 0.0});
    f.trees.push_back(tree);
  }
  zeros.impl = f;
  const auto pred = zeros.predict({0.5});
  CHECK(pred.label == 0);
  CHECK(pred.score == 0.0);
}

TEST_CASE("training is invariant to row permutations", "[learn]") {
  auto d = blob_dataset(120, 13, 2.0);  // partial overlap keeps trees non-trivial
  auto shuffled = d;
  Rng rng(55);
  rng.shuffle(shuffled.rows);

  const Hyperparams hp;
  std::vector<std::vector<double>> probes;
  Rng prng(66);
  for (int i = 0; i < 50; ++i) probes.push_back({prng.uniform(-2.0, 6.0), prng.uniform(-2.0, 6.0)});

  for (auto kind : {ClassifierKind::forest, ClassifierKind::max_margin,
                    ClassifierKind::adaptive_boost, ClassifierKind::gradient_boost}) {
    const auto a = train_classifier(kind, d, hp, 111);
    const auto b = train_classifier(kind, shuffled, hp, 111);
    INFO(classifier_name(kind));
    for (const auto& p : probes) {
      const auto pa = a.predict(p);
      const auto pb = b.predict(p);
      REQUIRE(pa.label == pb.label);
      REQUIRE(pa.score == pb.score);
    }
  }
}

TEST_CASE("identical seeds reproduce identical models", "[learn]") {
  const auto d = blob_dataset(100, 17, 2.5);
  const Hyperparams hp;
  for (auto kind : {ClassifierKind::forest, ClassifierKind::gradient_boost}) {
    const auto a = train_classifier(kind, d, hp, 7);
    const auto b = train_classifier(kind, d, hp, 7);
    for (const auto& r : d.rows) REQUIRE(a.predict(r.features).score == b.predict(r.features).score);
  }
}

TEST_CASE("boosting training error is non-increasing over rounds", "[learn]") {
  // separable blobs: here the exponential bound bites and the 0-1 training
  // error shrinks monotonically (it provably need not on overlapping data)
  const auto d = blob_dataset(150, 23, 4.0);
  const auto model = train_classifier(ClassifierKind::adaptive_boost, d, {}, 31);
  const auto& ab = std::get<AdaBoostModel>(model.impl);
  REQUIRE(!ab.stumps.empty());

  double previous_error = 1.0;
  for (std::size_t rounds = 1; rounds <= ab.stumps.size(); ++rounds) {
    std::size_t wrong = 0;
    for (const auto& r : d.rows) {
      double f = 0.0;
      for (std::size_t t = 0; t < rounds; ++t)
        f += ab.weights[t] * static_cast<double>(ab.stumps[t].predict_pm(r.features));
      const int label = f >= 0.0 ? 1 : 0;
      wrong += static_cast<std::size_t>(label != r.label);
    }
    const double err = static_cast<double>(wrong) / static_cast<double>(d.size());
    CHECK(err <= previous_error + 1e-12);
    previous_error = err;
  }
}

TEST_CASE("majority_vote follows mode, tie rule, unanimity", "[learn]") {
  CHECK(majority_vote({1, 1, 0, 0, 1}) == 1);
  CHECK(majority_vote({0, 0, 0, 0}) == 0);

  std::vector<int> tied = {1, 0};
  std::vector<double> scores = {0.9, 0.2};  // the 0-voter is weakly confident
  CHECK(majority_vote(tied, &scores) == 1);

  std::vector<double> strong_zero = {0.6, 0.05};
  CHECK(majority_vote(tied, &strong_zero) == 0);

  // without scores a tie settles on 0
  CHECK(majority_vote({1, 0}) == 0);
  CHECK_THROWS_AS(majority_vote({}), Error);
}

TEST_CASE("majority_vote of a repeated label is that label", "[learn]") {
  Rng rng(3);
  for (int rep = 0; rep < 50; ++rep) {
    const int x = static_cast<int>(rng.below(2));
    const std::size_t k = 1 + rng.below(9);
    CHECK(majority_vote(std::vector<int>(k, x)) == x);
  }
}

TEST_CASE("hierarchical prediction follows the two-level mode", "[learn]") {
  // method verdicts (1,1,0) -> 1
  const auto ens = constant_ensemble({{{1, 1, 1, 1}, {1, 1, 1, 0}, {0, 0, 0, 0}}});
  std::vector<double> x = {0.0};
  const std::array<const std::vector<double>*, 3> xs = {&x, &x, &x};
  CHECK(hierarchical_predict(ens, xs).label == 1);

  const auto all_zero = constant_ensemble({{{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}});
  CHECK(hierarchical_predict(all_zero, xs).label == 0);

  try {
    hierarchical_predict(ens, {&x, nullptr, &x});
    FAIL("expected MissingMethod");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::missing_method);
  }
}

TEST_CASE("hierarchy equals mode-of-modes on random vote tables", "[learn]") {
  Rng rng(101);
  std::vector<double> x = {0.0};
  const std::array<const std::vector<double>*, 3> xs = {&x, &x, &x};
  for (int rep = 0; rep < 1000; ++rep) {
    std::array<std::array<int, 4>, 3> table{};
    for (auto& method : table)
      for (auto& v : method) v = static_cast<int>(rng.below(2));

    // independent oracle; constant voters make every tie a both-sides-sure
    // tie, which the documented rule settles on 0
    std::array<int, 3> verdicts{};
    for (std::size_t m = 0; m < 3; ++m) {
      int ones = 0;
      for (int v : table[m]) ones += v;
      verdicts[m] = ones > 2 ? 1 : 0;
    }
    const int expected = (verdicts[0] + verdicts[1] + verdicts[2]) >= 2 ? 1 : 0;

    const auto ens = constant_ensemble(table);
    REQUIRE(hierarchical_predict(ens, xs).label == expected);
  }
}

namespace {

std::array<LabeledDataset, 3> three_method_copies(const LabeledDataset& base) {
  std::array<LabeledDataset, 3> out = {base, base, base};
  out[0].method = FeatureMethod::stft;
  out[1].method = FeatureMethod::dwt;
  out[2].method = FeatureMethod::hht;
  return out;
}

}  // namespace

TEST_CASE("evaluate_ensemble endpoints: perfect and constant", "[learn]") {
  // one feature that IS the label: every family learns it perfectly
  LabeledDataset d;
  d.target = "like";
  Rng rng(5);
  for (int i = 0; i < 60; ++i) {
    LabeledRow r;
    r.label = i % 2;
    r.features = {static_cast<double>(r.label), rng.normal() * 0.01};
    d.rows.push_back(r);
  }
  const auto sets = three_method_copies(d);
  const auto ens = train_ensemble(sets, {}, 5, 2);
  const auto eval = evaluate_ensemble(ens, sets);
  CHECK(eval.report.accuracy == 1.0);
  CHECK(eval.report.f1 == 1.0);
  CHECK(eval.report.auc == 1.0);

  // constant-0 ensemble on a balanced set: chance accuracy and AUC
  const auto zeros = constant_ensemble({{{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}});
  LabeledDataset balanced;
  balanced.target = "like";
  for (int i = 0; i < 40; ++i) {
    LabeledRow r;
    r.label = i % 2;
    r.features = {0.0};
    balanced.rows.push_back(r);
  }
  const auto eval0 = evaluate_ensemble(zeros, three_method_copies(balanced));
  CHECK(eval0.report.accuracy == 0.5);
  CHECK(eval0.report.auc == 0.5);

  // misaligned rows across methods must fail
  auto bad = three_method_copies(balanced);
  bad[2].rows.pop_back();
  CHECK_THROWS_AS(evaluate_ensemble(zeros, bad), Error);
}

TEST_CASE("model bundles reload to bit-identical predictions", "[learn]") {
  testsup::TempDir tmp("bundle");
  const auto d = blob_dataset(80, 29, 2.0);
  ModelBundle bundle;
  bundle.seed = 9;
  const char* targets[3] = {"like", "excitement", "feelings"};
  for (std::size_t t = 0; t < 3; ++t) {
    auto sets = three_method_copies(d);
    for (auto& s : sets) s.target = targets[t];
    bundle.per_target[t] = train_ensemble(sets, {}, 9 + t, 2);
  }

  const std::string path = tmp.path("m.amrp-model");
  save_bundle(bundle, path);
  const auto loaded = load_bundle(path);

  Rng rng(31);
  for (int rep = 0; rep < 25; ++rep) {
    std::vector<double> x = {rng.uniform(-2.0, 6.0), rng.uniform(-2.0, 6.0)};
    const std::array<const std::vector<double>*, 3> xs = {&x, &x, &x};
    for (std::size_t t = 0; t < 3; ++t) {
      const auto a = hierarchical_predict(bundle.per_target[t], xs);
      const auto b = hierarchical_predict(loaded.per_target[t], xs);
      REQUIRE(a.label == b.label);
      REQUIRE(a.ranking_score == b.ranking_score);
    }
  }
}
