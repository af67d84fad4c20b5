// amrp: affective meal recommendation and planning toolkit.
// Subcommands cover the pipeline stages; `run` executes them end to end.
// Data goes to stdout (or --out), diagnostics to stderr.

#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "amrp/feature_table.hpp"
#include "amrp/fixtures.hpp"
#include "amrp/pipeline.hpp"

namespace {

using namespace amrp;

void emit(std::string payload, const std::string& out) {
  if (!payload.empty() && payload.back() != '\n') payload += '\n';
  if (out.empty() || out == "-") {
    std::cout << payload;
  } else {
    write_text(out, payload);
  }
}

std::vector<std::string> read_lines_or_stdin(const std::string& path) {
  if (path != "-") return read_lines(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(std::cin, line)) lines.push_back(line);
  return lines;
}

// "lo:hi" -> pair
std::pair<double, double> parse_band(const std::string& s) {
  const auto pos = s.find(':');
  if (pos == std::string::npos) fail(Errc::config_error, "band must be lo:hi");
  bool ok1 = false, ok2 = false;
  const double lo = parse_double(s.substr(0, pos), ok1);
  const double hi = parse_double(s.substr(pos + 1), ok2);
  if (!ok1 || !ok2) fail(Errc::config_error, "band must be numeric lo:hi");
  return {lo, hi};
}

// "wavelet:levels:mode:multiplier", e.g. db4:4:soft:1.0
void parse_denoise(const std::string& s, PipelineConfig& cfg) {
  std::stringstream ss(s);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.size() < 2) fail(Errc::config_error, "denoise must be wavelet:levels[:mode[:multiplier]]");
  cfg.denoise_wavelet = parts[0];
  bool ok = false;
  cfg.denoise_levels = static_cast<std::size_t>(parse_long(parts[1], ok));
  if (!ok) fail(Errc::config_error, "denoise levels must be an integer");
  if (parts.size() > 2) {
    if (parts[2] == "soft") cfg.denoise_rule.mode = ThresholdRule::Mode::soft;
    else if (parts[2] == "hard") cfg.denoise_rule.mode = ThresholdRule::Mode::hard;
    else fail(Errc::config_error, "denoise mode must be soft or hard");
  }
  if (parts.size() > 3) {
    cfg.denoise_rule.multiplier = parse_double(parts[3], ok);
    if (!ok) fail(Errc::config_error, "denoise multiplier must be numeric");
  }
}

DecisionMatrix load_affectivity_table(const std::string& path) {
  DecisionMatrix dm;
  if (path != "-" && path.size() > 5 && path.substr(path.size() - 5) == ".json") {
    nlohmann::json j = nlohmann::json::parse(read_text(path));
    const auto& arr = j.is_array() ? j : j.at("foods");
    std::map<long, std::vector<double>> rows;
    for (const auto& e : arr) {
      const long food = e.contains("food") ? e.at("food").get<long>() : e.at("food_id").get<long>();
      if (e.contains("values")) {
        rows[food] = e.at("values").get<std::vector<double>>();
      } else {
        rows[food] = {e.at("like").get<double>(), e.at("excitement").get<double>(),
                      e.at("feelings").get<double>()};
      }
    }
    for (const auto& [food, vals] : rows) dm.x.push_back(vals);
    return dm;
  }
  const auto lines = read_lines_or_stdin(path);
  if (lines.empty()) fail(Errc::malformed_row, "empty affectivity table");
  if (trim(lines[0]) != "food,like,excitement,feelings")
    fail(Errc::malformed_row, "affectivity header must be food,like,excitement,feelings");
  std::map<long, std::vector<double>> rows;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    if (lines[r].empty() && r + 1 == lines.size()) break;
    const auto cells = split_csv_line(lines[r]);
    if (cells.size() != 4) fail(Errc::malformed_row, "affectivity row " + std::to_string(r));
    bool ok = true, all_ok = true;
    const long food = parse_long(cells[0], ok);
    all_ok &= ok;
    std::vector<double> vals(3);
    for (int c = 0; c < 3; ++c) {
      vals[c] = parse_double(cells[c + 1], ok);
      all_ok &= ok;
    }
    if (!all_ok) fail(Errc::malformed_row, "affectivity row " + std::to_string(r));
    rows[food] = vals;
  }
  for (const auto& [food, vals] : rows) dm.x.push_back(vals);
  return dm;
}

DayBudget parse_budget_flags(const std::string& breakfast, const std::string& lunch,
                             const std::string& dinner, const std::string& snacks,
                             const std::string& day) {
  DayBudget b = default_day_budget();
  auto apply = [](MealBudget& m, const std::string& s) {
    if (s.empty()) return;
    const auto [lo, hi] = parse_band(s);
    m.min_kcal = lo;
    m.max_kcal = hi;
  };
  apply(b.meals[0], breakfast);
  apply(b.meals[1], lunch);
  apply(b.meals[2], dinner);
  apply(b.meals[3], snacks);
  if (!day.empty()) {
    const auto [lo, hi] = parse_band(day);
    b.total_min_kcal = lo;
    b.total_max_kcal = hi;
  }
  return b;
}

PipelineConfig config_from_json(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::config_error, std::string("config: ") + e.what());
  }
  PipelineConfig cfg;
  try {
    if (j.value("version", 1) != 1) fail(Errc::config_error, "unsupported config version");
    if (j.contains("inputs")) {
      const auto& in = j.at("inputs");
      if (in.contains("sessions")) {
        for (const auto& s : in.at("sessions"))
          cfg.sessions.push_back(
              {s.at("recording").get<std::string>(), s.at("labels").get<std::string>()});
      }
      if (in.contains("synth")) {
        SynthSpec spec;
        spec.subjects = in.at("synth").value("subjects", 1);
        if (in.at("synth").contains("profile")) {
          const auto& p = in.at("synth").at("profile");
          for (std::size_t t = 0; t < 3; ++t) {
            if (!p.contains(target_name(t))) continue;
            spec.profile.per_target[t].band = p.at(target_name(t)).at("band").get<std::string>();
            spec.profile.per_target[t].power_gain = p.at(target_name(t)).value("gain", 4.0);
          }
        }
        cfg.synth = spec;
      }
    }
    cfg.food_db_path = j.value("food_db", "");
    cfg.output_dir = j.value("output_dir", "out");
    cfg.channel_mode = channel_mode_from_name(j.value("channels", "all"));
    if (j.contains("protocol")) {
      const auto& p = j.at("protocol");
      cfg.protocol.food_count = p.value("foods", 40);
      cfg.protocol.stimulus_seconds = p.value("stimulus_seconds", 10.0);
      cfg.protocol.calm_seconds = p.value("calm_seconds", 17.0);
      cfg.protocol.sample_rate_hz = p.value("sample_rate_hz", 128.0);
    }
    if (j.contains("band")) {
      cfg.band_lo_hz = j.at("band").at(0).get<double>();
      cfg.band_hi_hz = j.at("band").at(1).get<double>();
    }
    if (j.contains("bands")) {
      std::vector<BandSpec> table;
      for (const auto& b : j.at("bands"))
        table.push_back({b.at("name").get<std::string>(), b.at("lo").get<double>(),
                         b.at("hi").get<double>()});
      if (table.empty()) fail(Errc::config_error, "bands override must not be empty");
      cfg.features.band_table = table;
    }
    cfg.wideband = j.value("wideband", false);
    cfg.filter_order = j.value("filter_order", 4);
    if (j.contains("denoise")) {
      const auto& d = j.at("denoise");
      cfg.denoise_wavelet = d.value("wavelet", "db4");
      cfg.denoise_levels = d.value("levels", 4);
      if (d.value("mode", "soft") == "hard") cfg.denoise_rule.mode = ThresholdRule::Mode::hard;
      cfg.denoise_rule.multiplier = d.value("multiplier", 1.0);
    }
    if (j.contains("split")) {
      cfg.train_fraction = j.at("split").value("fraction", 0.7);
      cfg.split_by_subject = j.at("split").value("by_subject", false);
    }
    cfg.seed = j.value("seed", 1);
    if (j.contains("topsis")) {
      if (j.at("topsis").contains("weights"))
        cfg.topsis_weights = j.at("topsis").at("weights").get<std::vector<double>>();
      cfg.top_k = j.at("topsis").value("top", 5);
    }
    if (j.contains("budget")) {
      const auto& b = j.at("budget");
      auto window = [&](const char* name, MealBudget& m) {
        if (!b.contains(name)) return;
        m.min_kcal = b.at(name).at(0).get<double>();
        m.max_kcal = b.at(name).at(1).get<double>();
      };
      window("breakfast", cfg.budget.meals[0]);
      window("lunch", cfg.budget.meals[1]);
      window("dinner", cfg.budget.meals[2]);
      window("snacks", cfg.budget.meals[3]);
      if (b.contains("day")) {
        cfg.budget.total_min_kcal = b.at("day").at(0).get<double>();
        cfg.budget.total_max_kcal = b.at("day").at(1).get<double>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::config_error, std::string("config: ") + e.what());
  }
  // environment overrides, paths only
  if (const char* v = std::getenv("AMRP_FOOD_DB")) cfg.food_db_path = v;
  if (const char* v = std::getenv("AMRP_OUTPUT_DIR")) cfg.output_dir = v;
  return cfg;
}

int cmd_synth(const std::string& out_dir, std::size_t subjects, std::size_t foods,
              std::uint64_t seed) {
  std::filesystem::create_directories(out_dir);
  StimulusProtocol protocol;
  protocol.food_count = foods;
  const auto layout = default_layout();
  for (std::size_t s = 0; s < subjects; ++s) {
    auto [rec, labels] = synthesize_session(protocol, layout, default_class_profile(),
                                            derive_seed(seed, 900, s));
    const std::string rp = out_dir + "/recording" + std::to_string(s) + ".csv";
    const std::string lp = out_dir + "/labels" + std::to_string(s) + ".csv";
    save_recording(rec, rp);
    save_labels(labels, lp);
    std::cerr << "wrote " << rp << " and " << lp << "\n";
  }
  return 0;
}

int cmd_fixtures() {
  int failures = 0;
  auto report = [&failures](const std::string& name, bool pass, const std::string& detail) {
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << name << "  " << detail << "\n";
    if (!pass) ++failures;
  };

  for (const auto& fx : reference_confusion_fixtures()) {
    const double got = f1(fx.matrix());
    const bool pass = std::abs(got - fx.printed_f1) <= fx.tolerance;
    char detail[96];
    std::snprintf(detail, sizeof(detail), "f1 %.4f printed %.4f tol %.4f", got, fx.printed_f1,
                  fx.tolerance);
    report("confusion/" + fx.name, pass, detail);
  }

  {
    const WorkedExampleExpectations exp;
    const auto res = topsis_rank(reference_decision_matrix(), exp.weights);
    auto close = [&](double a, double b) { return std::abs(a - b) <= exp.tolerance; };
    bool pass = true;
    for (std::size_t jcol = 0; jcol < 3; ++jcol) {
      pass = pass && close(res.normalized[0][jcol], exp.normalized_first_row[jcol]);
      pass = pass && close(res.weighted[0][jcol], exp.weighted_first_row[jcol]);
      pass = pass && close(res.ideal_best[jcol], exp.ideal_best[jcol]);
      pass = pass && close(res.ideal_worst[jcol], exp.ideal_worst[jcol]);
    }
    pass = pass && res.closeness[0] == 1.0 && close(res.sep_worst[0], exp.sep_worst_first_row);
    report("topsis/worked-example", pass, "first row, ideal points and closeness within 1e-3");
  }

  {
    const auto foods = reference_menu_foods();
    const ReferenceDayPlan ref;
    MealPlan plan;
    auto add = [&](MealSlot s, const std::vector<int>& ids) {
      for (int id : ids)
        for (const auto& f : foods)
          if (f.id == id) plan.slots[static_cast<std::size_t>(s)].push_back(f);
    };
    add(MealSlot::breakfast, ref.breakfast);
    add(MealSlot::lunch, ref.lunch);
    add(MealSlot::dinner, ref.dinner);
    add(MealSlot::snacks, ref.snacks);
    const auto rep = validate_plan(plan, default_day_budget());
    const bool totals = rep.slot_kcal[0] == ref.breakfast_kcal && rep.slot_kcal[1] == ref.lunch_kcal &&
                        rep.slot_kcal[2] == ref.dinner_kcal && rep.slot_kcal[3] == ref.snacks_kcal &&
                        std::abs(rep.day_kcal - ref.day_kcal) < 1e-9 && rep.day_kcal >= 1500.0 &&
                        rep.day_kcal <= 2000.0;
    report("menu/reference-totals", totals, "343 / 450 / 691 / 192.3, day 1676.3");

    bool planned = false;
    try {
      const auto mine = plan_menu(foods, reference_menu_scores(), default_day_budget());
      planned = validate_plan(mine, default_day_budget()).valid();
    } catch (const Error&) {
      planned = false;
    }
    report("menu/planner-feasible", planned, "planner finds a valid default-budget plan");
  }

  std::cerr << (failures == 0 ? "all fixtures passed\n"
                              : std::to_string(failures) + " fixture(s) failed\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace amrp;
  CLI::App app{"affective meal recommendation and menu planning toolkit"};
  app.require_subcommand(1);

  // ---- synth ----
  auto* synth = app.add_subcommand("synth", "generate seeded synthetic EEG sessions");
  std::string synth_out = "synth";
  std::size_t synth_subjects = 1, synth_foods = 40;
  std::uint64_t synth_seed = 1;
  synth->add_option("--out-dir", synth_out, "output directory");
  synth->add_option("--subjects", synth_subjects, "number of sessions");
  synth->add_option("--foods", synth_foods, "foods per session");
  synth->add_option("--seed", synth_seed, "master seed");

  // ---- preprocess ----
  auto* prep = app.add_subcommand("preprocess", "band-pass + wavelet-denoise a recording");
  std::string prep_in, prep_out = "-", prep_band = "0.5:30", prep_denoise = "db4:4:soft:1";
  std::string prep_channels = "all";
  bool prep_wideband = false;
  std::size_t prep_order = 4;
  prep->add_option("--in", prep_in, "recording CSV")->required();
  prep->add_option("--out", prep_out, "output CSV path or -");
  prep->add_option("--band", prep_band, "pass band lo:hi in Hz");
  prep->add_flag("--wideband", prep_wideband, "use 0.3:45 so the top band stays non-degenerate");
  prep->add_option("--order", prep_order, "filter order (even)");
  prep->add_option("--denoise", prep_denoise, "wavelet:levels[:mode[:multiplier]]");
  prep->add_option("--channels", prep_channels, "all or frontal");

  // ---- features ----
  auto* feat = app.add_subcommand("features", "per-epoch feature table from a cleaned recording");
  std::string feat_in, feat_labels, feat_method = "stft", feat_out = "-";
  std::size_t feat_subject = 0, feat_foods = 40;
  feat->add_option("--in", feat_in, "preprocessed recording CSV")->required();
  feat->add_option("--labels", feat_labels, "survey labels CSV")->required();
  feat->add_option("--method", feat_method, "stft | dwt | hht");
  feat->add_option("--subject", feat_subject, "subject index recorded in provenance");
  feat->add_option("--foods", feat_foods, "protocol food count");
  feat->add_option("--out", feat_out, "output CSV path or -");

  // ---- train ----
  auto* train = app.add_subcommand("train", "train the hierarchical ensemble for all targets");
  std::string train_stft, train_dwt, train_hht, train_model = "model.amrp-model";
  double train_fraction = 0.7;
  std::uint64_t train_seed = 1;
  train->add_option("--stft", train_stft, "stft feature table")->required();
  train->add_option("--dwt", train_dwt, "dwt feature table")->required();
  train->add_option("--hht", train_hht, "hht feature table")->required();
  train->add_option("--out", train_model, ".amrp-model path");
  train->add_option("--split", train_fraction, "train fraction");
  train->add_option("--seed", train_seed, "split + training seed");

  // ---- eval ----
  auto* eval = app.add_subcommand("eval", "evaluate a model bundle on feature tables");
  std::string eval_model, eval_stft, eval_dwt, eval_hht, eval_affect;
  eval->add_option("--model", eval_model, ".amrp-model bundle")->required();
  eval->add_option("--stft", eval_stft, "stft feature table")->required();
  eval->add_option("--dwt", eval_dwt, "dwt feature table")->required();
  eval->add_option("--hht", eval_hht, "hht feature table")->required();
  eval->add_option("--affectivity", eval_affect, "also write the per-food criterion table (CSV)");

  // ---- recommend ----
  auto* rec = app.add_subcommand("recommend", "TOPSIS ranking of an affectivity table");
  std::string rec_table = "-", rec_out = "-", rec_weights = "0.4,0.3,0.3";
  std::size_t rec_top = 5;
  rec->add_option("--table", rec_table, "affectivity table CSV/JSON ('-' reads CSV from stdin)");
  rec->add_option("--weights", rec_weights, "criterion weights w1,w2,w3");
  rec->add_option("--top", rec_top, "number of foods to emit (0 = all)");
  rec->add_option("--out", rec_out, "output JSON path or -");

  // ---- plan ----
  auto* plan = app.add_subcommand("plan", "pack a full-day menu from foods and scores");
  std::string plan_foods, plan_scores, plan_out = "-";
  std::string plan_b, plan_l, plan_d, plan_s, plan_day;
  bool plan_pretty = false;
  plan->add_option("--foods", plan_foods, "food database JSON")->required();
  plan->add_flag("--pretty", plan_pretty, "print a slot-per-row table instead of JSON");
  plan->add_option("--scores", plan_scores, "ranking JSON ({food, score} array)");
  plan->add_option("--breakfast", plan_b, "window min:max kcal");
  plan->add_option("--lunch", plan_l, "window min:max kcal");
  plan->add_option("--dinner", plan_d, "window min:max kcal");
  plan->add_option("--snacks", plan_s, "window min:max kcal");
  plan->add_option("--day", plan_day, "day window min:max kcal");
  plan->add_option("--out", plan_out, "output JSON path or -");

  // ---- export-spectrogram ----
  auto* spec = app.add_subcommand("export-spectrogram", "dump STFT frames as CSV triples");
  std::string spec_in, spec_channel, spec_out = "-";
  std::size_t spec_window = 64, spec_hop = 32;
  bool spec_rect = false;
  spec->add_option("--in", spec_in, "recording CSV")->required();
  spec->add_option("--channel", spec_channel, "channel name")->required();
  spec->add_option("--window", spec_window, "window length in samples");
  spec->add_option("--hop", spec_hop, "hop in samples");
  spec->add_flag("--rect", spec_rect, "rectangular window instead of hann");
  spec->add_option("--out", spec_out, "output CSV path or -");

  // ---- fixtures ----
  app.add_subcommand("fixtures", "run the bundled regression fixtures");

  // ---- run ----
  auto* run = app.add_subcommand("run", "full pipeline from a JSON config");
  std::string run_config;
  std::uint64_t run_seed = 0;
  bool run_seed_set = false;
  run->add_option("--config", run_config, "pipeline config JSON")->required();
  run->add_option("--seed", run_seed, "override every seed coherently")
      ->each([&run_seed_set](const std::string&) { run_seed_set = true; });

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("synth"))
      return cmd_synth(synth_out, synth_subjects, synth_foods, synth_seed);

    if (app.got_subcommand("preprocess")) {
      PipelineConfig cfg;
      const auto [lo, hi] = parse_band(prep_band);
      cfg.band_lo_hz = lo;
      cfg.band_hi_hz = hi;
      cfg.wideband = prep_wideband;
      cfg.filter_order = prep_order;
      parse_denoise(prep_denoise, cfg);
      auto recing = load_recording_any(prep_in, cfg.protocol.sample_rate_hz);
      recing = select_channels(recing, channel_mode_from_name(prep_channels));
      const auto cleaned = preprocess_recording(recing, cfg);
      emit(recording_to_csv(cleaned), prep_out);
      return 0;
    }

    if (app.got_subcommand("features")) {
      StimulusProtocol protocol;
      protocol.food_count = feat_foods;
      auto recing = load_recording_any(feat_in, protocol.sample_rate_hz);
      const auto labels = load_labels(feat_labels);
      const auto method = method_from_name(feat_method);
      FeatureConfig fc;
      FeatureTable table;
      table.method = method;
      for (const auto& trial : segment_trials(recing, protocol)) {
        for (const auto& epoch : window_epochs(trial, 1.0, protocol.sample_rate_hz)) {
          LabeledRow row;
          row.features = epoch_features(epoch, method, fc, protocol.sample_rate_hz).values;
          row.origin = {feat_subject, trial.food_index, epoch.window_index};
          table.rows.push_back(std::move(row));
          table.triples.push_back(labels.at(trial.food_index));
        }
      }
      emit(feature_table_to_csv(table), feat_out);
      return 0;
    }

    if (app.got_subcommand("train") || app.got_subcommand("eval")) {
      const bool training = app.got_subcommand("train");
      const std::array<std::string, 3> paths =
          training ? std::array<std::string, 3>{train_stft, train_dwt, train_hht}
                   : std::array<std::string, 3>{eval_stft, eval_dwt, eval_hht};
      std::array<FeatureTable, 3> tables;
      for (std::size_t m = 0; m < 3; ++m) {
        tables[m] = load_feature_table(paths[m]);
        if (tables[m].method != static_cast<FeatureMethod>(m))
          fail(Errc::config_error, paths[m] + " holds the wrong extraction method");
        if (tables[m].rows.size() != tables[0].rows.size())
          fail(Errc::misaligned_rows, "feature tables differ in row count");
      }

      ModelBundle bundle;
      std::array<EnsembleEvaluation, 3> evals;
      if (training) {
        bundle.seed = train_seed;
        for (std::size_t t = 0; t < 3; ++t) {
          std::vector<int> labels(tables[0].rows.size());
          for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = tables[0].triples[i].get(t);
          const auto idx =
              stratified_split_indices(labels, train_fraction, derive_seed(train_seed, 7710, t));
          std::array<LabeledDataset, 3> train_sets, test_sets;
          for (std::size_t m = 0; m < 3; ++m) {
            const auto full = tables[m].dataset_for(t);
            train_sets[m].method = test_sets[m].method = full.method;
            train_sets[m].target = test_sets[m].target = full.target;
            for (std::size_t i : idx.train) train_sets[m].rows.push_back(full.rows[i]);
            for (std::size_t i : idx.test) test_sets[m].rows.push_back(full.rows[i]);
          }
          bundle.per_target[t] = train_ensemble(train_sets, {}, derive_seed(train_seed, 7900, t));
          evals[t] = evaluate_ensemble(bundle.per_target[t], test_sets);
        }
        save_bundle(bundle, train_model);
        std::cerr << "wrote " << train_model << "\n";
      } else {
        bundle = load_bundle(eval_model);
        for (std::size_t t = 0; t < 3; ++t) {
          std::array<LabeledDataset, 3> sets;
          for (std::size_t m = 0; m < 3; ++m) sets[m] = tables[m].dataset_for(t);
          evals[t] = evaluate_ensemble(bundle.per_target[t], sets);
        }
      }

      PipelineResult partial;
      for (std::size_t t = 0; t < 3; ++t) {
        partial.targets[t].target = target_name(t);
        partial.targets[t].evaluation = evals[t];
      }
      emit(metrics_to_json(partial), "-");

      if (!training && !eval_affect.empty()) {
        // per-food criterion table on the {1,2} scale from the full tables
        std::map<std::size_t, std::array<std::vector<int>, 3>> votes;
        for (std::size_t i = 0; i < tables[0].rows.size(); ++i) {
          const std::array<const std::vector<double>*, 3> x = {&tables[0].rows[i].features,
                                                               &tables[1].rows[i].features,
                                                               &tables[2].rows[i].features};
          for (std::size_t t = 0; t < 3; ++t)
            votes[tables[0].rows[i].origin.trial][t].push_back(
                hierarchical_predict(bundle.per_target[t], x).label);
        }
        std::string csv = "food,like,excitement,feelings\n";
        for (const auto& [food, per_target] : votes) {
          csv += std::to_string(food);
          for (std::size_t t = 0; t < 3; ++t)
            csv += "," + std::to_string(1 + majority_vote(per_target[t]));
          csv += '\n';
        }
        write_text(eval_affect, csv);
        std::cerr << "wrote " << eval_affect << "\n";
      }
      return 0;
    }

    if (app.got_subcommand("recommend")) {
      DecisionMatrix dm = load_affectivity_table(rec_table);
      std::vector<double> weights;
      std::stringstream ss(rec_weights);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        bool ok = false;
        weights.push_back(parse_double(tok, ok));
        if (!ok) fail(Errc::config_error, "weights must be numeric");
      }
      const std::size_t k = rec_top == 0 ? dm.alternatives() : rec_top;
      const auto ranked = rank_foods(dm, weights, k);
      if (ranked.k_clamped) std::cerr << "top clamped to " << ranked.top.size() << " foods\n";
      JsonWriter w;
      w.begin_object();
      w.kv("schema", "amrp-recommendation/1");
      w.key("ranking").begin_array();
      for (const auto& e : ranked.top) {
        w.begin_object();
        w.kv("food", e.row);
        w.kv("score", e.closeness);
        w.end_object();
      }
      w.end_array();
      w.end_object();
      emit(w.str(), rec_out);
      return 0;
    }

    if (app.got_subcommand("plan")) {
      const auto db = load_food_db(plan_foods);
      std::map<int, double> score_of;
      if (!plan_scores.empty()) {
        nlohmann::json j = nlohmann::json::parse(read_text(plan_scores));
        const auto& arr = j.is_array() ? j : j.at("ranking");
        for (const auto& e : arr) score_of[e.at("food").get<int>()] = e.at("score").get<double>();
      }
      std::vector<FoodItem> foods = db.items;
      std::vector<double> scores;
      for (const auto& f : foods) {
        auto it = score_of.find(f.id);
        scores.push_back(it == score_of.end() ? 0.0 : it->second);
      }
      const auto budget = parse_budget_flags(plan_b, plan_l, plan_d, plan_s, plan_day);
      const auto result = plan_menu(foods, scores, budget);
      emit(plan_pretty ? plan_to_table(result) : plan_to_json(result), plan_out);
      return 0;
    }

    if (app.got_subcommand("export-spectrogram")) {
      const auto recing = load_recording_any(spec_in, 128.0);
      const std::size_t ch = recing.layout.index_of(spec_channel);
      const auto sg = stft(recing.samples[ch], spec_window, spec_hop,
                           spec_rect ? WindowFn::rect : WindowFn::hann, recing.sample_rate_hz);
      std::string csv = "# window=" + std::to_string(spec_window) + " hop=" + std::to_string(spec_hop) +
                        " fn=" + (spec_rect ? std::string("rect") : std::string("hann")) +
                        " fs=" + format_exact(recing.sample_rate_hz) + "\n";
      csv += "time_s,freq_hz,magnitude\n";
      for (std::size_t m = 0; m < sg.frame_count(); ++m)
        for (std::size_t k = 0; k < sg.bin_count(); ++k)
          csv += format_exact(sg.times_s[m]) + "," + format_exact(sg.freqs_hz[k]) + "," +
                 format_exact(sg.magnitudes[m][k]) + "\n";
      emit(csv, spec_out);
      return 0;
    }

    if (app.got_subcommand("fixtures")) return cmd_fixtures();

    if (app.got_subcommand("run")) {
      PipelineConfig cfg = config_from_json(run_config);
      if (run_seed_set) cfg.seed = run_seed;
      const auto result = run_pipeline(cfg);
      const auto artifacts = write_artifacts(result, cfg);
      for (const auto& [name, path] : artifacts) std::cerr << "wrote " << path << "\n";
      for (const auto& t : result.targets) {
        std::cerr << t.target << ": accuracy " << format_sig9(t.evaluation.report.accuracy)
                  << ", auc " << format_sig9(t.evaluation.report.auc) << "\n";
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
