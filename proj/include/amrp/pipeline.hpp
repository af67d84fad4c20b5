#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "amrp/dataset.hpp"
#include "amrp/fixtures.hpp"
#include "amrp/food.hpp"
#include "amrp/json_writer.hpp"
#include "amrp/menu.hpp"
#include "amrp/model_io.hpp"
#include "amrp/recording.hpp"
#include "amrp/survey.hpp"
#include "amrp/synthetic.hpp"
#include "amrp/topsis.hpp"
#include "amrp/voting.hpp"

namespace amrp {

struct SessionInput {
  std::string recording_path;
  std::string labels_path;
};

struct SynthSpec {
  std::size_t subjects = 1;
  ClassProfile profile = default_class_profile();
};

struct PipelineConfig {
  // either file-backed sessions or the synthetic generator
  std::vector<SessionInput> sessions;
  std::optional<SynthSpec> synth;
  std::string food_db_path;
  std::string output_dir;

  StimulusProtocol protocol;
  ChannelLayout layout = default_layout();
  ChannelMode channel_mode = ChannelMode::all;

  double band_lo_hz = 0.5;
  double band_hi_hz = 30.0;
  std::size_t filter_order = 4;
  bool wideband = false;  // widens the clean-up band to [0.3, 45]

  std::string denoise_wavelet = "db4";
  std::size_t denoise_levels = 4;
  ThresholdRule denoise_rule;

  double epoch_seconds = 1.0;
  FeatureConfig features;
  Hyperparams hyper;

  double train_fraction = 0.7;
  bool split_by_subject = false;
  std::uint64_t seed = 1;

  std::vector<double> topsis_weights = {0.4, 0.3, 0.3};
  std::size_t top_k = 5;
  DayBudget budget = default_day_budget();

  std::size_t parallelism = 0;  // 0 = hardware concurrency

  double effective_lo() const { return wideband ? 0.3 : band_lo_hz; }
  double effective_hi() const { return wideband ? 45.0 : band_hi_hz; }
};

// feature rows for every epoch, aligned across the three methods
struct EpochFeatureTable {
  std::array<std::vector<LabeledRow>, kFeatureMethodCount> rows;  // labels filled per target later
  std::vector<RowProvenance> origin;
  std::vector<LabelTriple> labels;  // per row

  std::size_t size() const { return origin.size(); }
};

struct TargetOutcome {
  std::string target;
  EnsembleEvaluation evaluation;
};

struct PipelineResult {
  std::array<TargetOutcome, 3> targets;
  DecisionMatrix affectivity;          // food x 3 criterion values in {1,2}
  std::vector<std::size_t> food_epoch_counts;
  RankFoodsResult recommendation;
  MealPlan plan;
  ModelBundle bundle;
  std::map<std::string, std::string> artifacts;  // name -> path written
};

// band-pass + wavelet denoise, per channel, on the continuous recording
inline EegRecording preprocess_recording(const EegRecording& rec, const PipelineConfig& cfg) {
  EegRecording out = rec;
  const IirCoeffs filter =
      design_bandpass(cfg.effective_lo(), cfg.effective_hi(), cfg.filter_order, rec.sample_rate_hz);
  for (auto& ch : out.samples) {
    ch = filtfilt(filter, ch);
    ch = wavelet_denoise(ch, cfg.denoise_wavelet, cfg.denoise_levels, cfg.denoise_rule);
  }
  return out;
}

// one session -> per-epoch feature rows for all three methods
inline void extract_session_features(const EegRecording& cleaned, const SurveyLabels& labels,
                                     std::size_t subject, const PipelineConfig& cfg,
                                     EpochFeatureTable& table) {
  const auto trials = segment_trials(cleaned, cfg.protocol);
  // epoch jobs run on a small pool; rows land in pre-assigned slots
  struct Job {
    const Trial* trial;
    std::size_t epoch_index;  // within trial
    std::size_t slot;         // row index in the table
  };
  std::vector<std::vector<Epoch>> epochs_per_trial;
  epochs_per_trial.reserve(trials.size());
  std::vector<Job> jobs;
  const std::size_t base = table.size();
  for (const auto& trial : trials) {
    epochs_per_trial.push_back(window_epochs(trial, cfg.epoch_seconds, cfg.protocol.sample_rate_hz));
    for (std::size_t e = 0; e < epochs_per_trial.back().size(); ++e)
      jobs.push_back({&trial, e, base + jobs.size()});
  }

  const std::size_t total = base + jobs.size();
  for (auto& rows : table.rows) rows.resize(total);
  table.origin.resize(total);
  table.labels.resize(total);

  const std::size_t workers =
      cfg.parallelism ? cfg.parallelism : std::max<std::size_t>(1, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  auto run = [&]() {
    for (;;) {
      const std::size_t j = next.fetch_add(1);
      if (j >= jobs.size()) return;
      const auto& job = jobs[j];
      const Epoch& epoch = epochs_per_trial[job.trial->food_index][job.epoch_index];
      for (std::size_t m = 0; m < kFeatureMethodCount; ++m) {
        auto fv = epoch_features(epoch, static_cast<FeatureMethod>(m), cfg.features,
                                 cfg.protocol.sample_rate_hz);
        table.rows[m][job.slot].features = std::move(fv.values);
        table.rows[m][job.slot].origin = {subject, job.trial->food_index, job.epoch_index};
      }
      table.origin[job.slot] = {subject, job.trial->food_index, job.epoch_index};
      table.labels[job.slot] = labels.at(job.trial->food_index);
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
}

namespace detail {

// subject-holdout split: whole subjects go to the test side
inline SplitIndices subject_split(const std::vector<RowProvenance>& origin, double train_fraction,
                                  std::uint64_t seed) {
  std::vector<std::size_t> subjects;
  for (const auto& o : origin)
    if (std::find(subjects.begin(), subjects.end(), o.subject) == subjects.end())
      subjects.push_back(o.subject);
  Rng rng(derive_seed(seed, 7801));
  rng.shuffle(subjects);
  std::size_t train_subjects =
      static_cast<std::size_t>(static_cast<double>(subjects.size()) * train_fraction);
  train_subjects = std::max<std::size_t>(1, std::min(train_subjects, subjects.size() - 1));
  std::map<std::size_t, bool> subject_in_train;
  for (std::size_t k = 0; k < subjects.size(); ++k) subject_in_train[subjects[k]] = k < train_subjects;
  SplitIndices out;
  for (std::size_t i = 0; i < origin.size(); ++i)
    (subject_in_train[origin[i].subject] ? out.train : out.test).push_back(i);
  return out;
}

}  // namespace detail

namespace detail {

// re-throws with the pipeline stage name prepended to the cause
template <typename F>
auto staged(const char* stage, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.code(), std::string("stage ") + stage + ": " + e.what());
  }
}

}  // namespace detail

inline PipelineResult run_pipeline(const PipelineConfig& cfg) {
  if (cfg.food_db_path.empty()) fail(Errc::config_error, "food_db path is required");
  if (cfg.sessions.empty() && !cfg.synth)
    fail(Errc::config_error, "either session files or a synth block is required");
  const FoodDatabase food_db =
      detail::staged("ingest", [&] { return load_food_db(cfg.food_db_path); });

  // ingest + preprocess + features, one session at a time
  EpochFeatureTable table;
  if (cfg.synth) {
    for (std::size_t s = 0; s < cfg.synth->subjects; ++s) {
      auto [rec, labels] = detail::staged("synthesize", [&] {
        return synthesize_session(cfg.protocol, cfg.layout, cfg.synth->profile,
                                  derive_seed(cfg.seed, 900, s));
      });
      const auto cleaned = detail::staged("preprocess", [&] {
        return preprocess_recording(select_channels(rec, cfg.channel_mode), cfg);
      });
      detail::staged("features",
                     [&] { extract_session_features(cleaned, labels, s, cfg, table); });
    }
  } else {
    for (std::size_t s = 0; s < cfg.sessions.size(); ++s) {
      auto [rec, labels] = detail::staged("ingest", [&] {
        return std::make_pair(
            load_recording(cfg.sessions[s].recording_path, cfg.layout, cfg.protocol.sample_rate_hz),
            load_labels(cfg.sessions[s].labels_path));
      });
      const auto cleaned = detail::staged("preprocess", [&] {
        return preprocess_recording(select_channels(rec, cfg.channel_mode), cfg);
      });
      detail::staged("features",
                     [&] { extract_session_features(cleaned, labels, s, cfg, table); });
    }
  }
  if (table.size() == 0) fail(Errc::empty_input, "no epochs extracted");

  PipelineResult result;
  result.bundle.seed = cfg.seed;

  // per-target training and evaluation on one shared epoch split
  for (std::size_t t = 0; t < 3; ++t) {
    std::vector<int> labels(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) labels[i] = table.labels[i].get(t);

    const SplitIndices idx =
        cfg.split_by_subject
            ? detail::subject_split(table.origin, cfg.train_fraction, derive_seed(cfg.seed, 7710, t))
            : stratified_split_indices(labels, cfg.train_fraction, derive_seed(cfg.seed, 7710, t));

    std::array<LabeledDataset, kFeatureMethodCount> train, test;
    for (std::size_t m = 0; m < kFeatureMethodCount; ++m) {
      train[m].method = test[m].method = static_cast<FeatureMethod>(m);
      train[m].target = test[m].target = target_name(t);
      for (std::size_t i : idx.train) {
        auto row = table.rows[m][i];
        row.label = labels[i];
        train[m].rows.push_back(std::move(row));
      }
      for (std::size_t i : idx.test) {
        auto row = table.rows[m][i];
        row.label = labels[i];
        test[m].rows.push_back(std::move(row));
      }
    }

    result.bundle.per_target[t] = detail::staged("train", [&] {
      return train_ensemble(train, cfg.hyper, derive_seed(cfg.seed, 7900, t), cfg.parallelism);
    });
    result.targets[t].target = target_name(t);
    result.targets[t].evaluation = detail::staged(
        "evaluate", [&] { return evaluate_ensemble(result.bundle.per_target[t], test); });
  }

  // per-food affectivity: majority of the level-2 labels over the food's
  // epochs, shifted to the {1, 2} criterion scale
  result.affectivity.x.assign(cfg.protocol.food_count, std::vector<double>(3, 0.0));
  result.food_epoch_counts.assign(cfg.protocol.food_count, 0);
  for (std::size_t t = 0; t < 3; ++t) {
    std::vector<std::vector<int>> votes(cfg.protocol.food_count);
    for (std::size_t i = 0; i < table.size(); ++i) {
      const std::array<const std::vector<double>*, kFeatureMethodCount> x = {
          &table.rows[0][i].features, &table.rows[1][i].features, &table.rows[2][i].features};
      const auto pred = hierarchical_predict(result.bundle.per_target[t], x);
      votes[table.origin[i].trial].push_back(pred.label);
      if (t == 0) ++result.food_epoch_counts[table.origin[i].trial];
    }
    for (std::size_t f = 0; f < cfg.protocol.food_count; ++f) {
      if (votes[f].empty()) fail(Errc::empty_input, "food " + std::to_string(f) + " has no epochs");
      result.affectivity.x[f][t] = 1.0 + static_cast<double>(majority_vote(votes[f]));
    }
  }

  result.recommendation = detail::staged(
      "recommend", [&] { return rank_foods(result.affectivity, cfg.topsis_weights, cfg.top_k); });

  // menu planning over the database foods scored by TOPSIS closeness;
  // food ids follow the stimulus order
  std::vector<FoodItem> foods;
  std::vector<double> scores;
  for (const auto& item : food_db.items) {
    if (item.id < 0 || static_cast<std::size_t>(item.id) >= cfg.protocol.food_count) continue;
    foods.push_back(item);
    scores.push_back(result.recommendation.full.closeness[static_cast<std::size_t>(item.id)]);
  }
  result.plan = detail::staged("plan", [&] { return plan_menu(foods, scores, cfg.budget); });
  return result;
}

// ------------------------------ artifact output ------------------------------

inline std::string affectivity_to_json(const PipelineResult& r) {
  JsonWriter w;
  w.begin_object();
  w.kv("schema", "amrp-affectivity/1");
  w.key("criteria").begin_array().value("like").value("excitement").value("feelings").end_array();
  w.key("foods").begin_array();
  for (std::size_t f = 0; f < r.affectivity.x.size(); ++f) {
    w.begin_object();
    w.kv("food", f);
    w.key("values").begin_array();
    for (double v : r.affectivity.x[f]) w.value(v);
    w.end_array();
    w.kv("epochs", r.food_epoch_counts[f]);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

inline std::string recommendation_to_json(const PipelineResult& r, const FoodDatabase& db) {
  JsonWriter w;
  w.begin_object();
  w.kv("schema", "amrp-recommendation/1");
  w.key("ranking").begin_array();
  for (const auto& e : r.recommendation.top) {
    w.begin_object();
    w.kv("food", e.row);
    std::string name;
    for (const auto& item : db.items)
      if (item.id == static_cast<int>(e.row)) name = item.name;
    w.kv("name", name);
    w.kv("score", e.closeness);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

inline std::string plan_to_json(const MealPlan& plan) {
  JsonWriter w;
  w.begin_object();
  w.kv("schema", "amrp-plan/1");
  for (std::size_t s = 0; s < kMealSlotCount; ++s) {
    const MealSlot slot = static_cast<MealSlot>(s);
    w.key(slot_name(slot)).begin_array();
    for (const auto& f : plan.slots[s]) {
      w.begin_object();
      w.kv("id", f.id);
      w.kv("name", f.name);
      w.kv("kcal", f.calories);
      w.end_object();
    }
    w.end_array();
  }
  w.key("subtotals").begin_object();
  for (std::size_t s = 0; s < kMealSlotCount; ++s) {
    const MealSlot slot = static_cast<MealSlot>(s);
    w.kv(slot_name(slot), plan.slot_kcal(slot));
  }
  w.end_object();
  w.kv("day_total", plan.day_kcal());
  w.kv("objective", plan.objective);
  w.end_object();
  return w.str();
}

// slot-per-row table with per-plate calories, like the reference menus
inline std::string plan_to_table(const MealPlan& plan) {
  std::string out = "Time      | Food Name\n";
  out += "----------+------------------------------------------------------\n";
  const char* names[kMealSlotCount] = {"Breakfast", "Lunch", "Dinner", "Snacks"};
  for (std::size_t s = 0; s < kMealSlotCount; ++s) {
    std::string row;
    for (const auto& f : plan.slots[s]) {
      if (!row.empty()) row += ", ";
      row += f.name + " (" + format_exact(f.calories) + " Cal)";
    }
    char head[16];
    std::snprintf(head, sizeof(head), "%-9s", names[s]);
    out += std::string(head) + " | " + row + "\n";
  }
  out += "Total: " + format_exact(plan.day_kcal()) + " Cal\n";
  return out;
}

inline std::string metrics_to_json(const PipelineResult& r) {
  JsonWriter w;
  w.begin_object();
  w.kv("schema", "amrp-metrics/1");
  w.key("targets").begin_array();
  for (const auto& t : r.targets) {
    const auto& rep = t.evaluation.report;
    w.begin_object();
    w.kv("target", t.target);
    w.key("confusion").begin_object();
    w.kv("tp", rep.confusion.tp);
    w.kv("tn", rep.confusion.tn);
    w.kv("fp", rep.confusion.fp);
    w.kv("fn", rep.confusion.fn);
    w.kv("positive_class", rep.confusion.positive_class);
    w.end_object();
    w.kv("accuracy", rep.accuracy);
    w.kv("misclassification", rep.misclassification);
    w.kv("f1", rep.f1);
    w.kv("auc", rep.auc);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

// Writes the four artifacts plus the model bundle; returns name -> path.
inline std::map<std::string, std::string> write_artifacts(const PipelineResult& r,
                                                          const PipelineConfig& cfg) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.output_dir);
  const FoodDatabase db = load_food_db(cfg.food_db_path);
  std::map<std::string, std::string> out;
  auto emit = [&](const std::string& name, const std::string& content) {
    const std::string path = (fs::path(cfg.output_dir) / name).string();
    write_text(path, content);
    out[name] = path;
  };
  emit("affectivity.json", affectivity_to_json(r));
  emit("recommendation.json", recommendation_to_json(r, db));
  emit("plan.json", plan_to_json(r.plan));
  emit("metrics.json", metrics_to_json(r));
  emit("model.amrp-model", bundle_to_json(r.bundle));
  return out;
}

}  // namespace amrp
