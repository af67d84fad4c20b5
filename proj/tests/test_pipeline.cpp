#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "amrp/pipeline.hpp"

#include "test_support.hpp"

using namespace amrp;

namespace {

PipelineConfig small_config(const std::string& out_dir) {
  PipelineConfig cfg;
  cfg.synth = SynthSpec{2, default_class_profile()};
  cfg.protocol.food_count = 12;
  cfg.layout = ChannelLayout{};
  cfg.layout.names = {"C0", "C1", "C2", "C3"};
  cfg.layout.frontal_subset = {"C0", "C1"};
  cfg.food_db_path = std::string(AMRP_TEST_DATA_DIR) + "/foods.json";
  cfg.output_dir = out_dir;
  cfg.seed = 12345;
  cfg.parallelism = 2;
  return cfg;
}

}  // namespace

TEST_CASE("the full pipeline runs on seeded synthetic sessions", "[pipeline]") {
  testsup::TempDir tmp("pipe_run");
  auto cfg = small_config(tmp.path("out"));
  const auto result = run_pipeline(cfg);

  // all three targets evaluated
  for (const auto& t : result.targets) {
    CHECK(!t.target.empty());
    CHECK(t.evaluation.report.confusion.n() > 0);
    // desk-scale synthetic data stays clearly above chance
    CHECK(t.evaluation.report.accuracy > 0.6);
  }

  // affectivity values live on the {1, 2} criterion scale
  REQUIRE(result.affectivity.x.size() == cfg.protocol.food_count);
  for (const auto& row : result.affectivity.x)
    for (double v : row) CHECK((v == 1.0 || v == 2.0));

  // top-5 by default
  CHECK(result.recommendation.top.size() == 5);

  // the plan passes validation against the configured budget
  CHECK(validate_plan(result.plan, cfg.budget).valid());

  // artifacts land in the output directory
  const auto artifacts = write_artifacts(result, cfg);
  for (const auto& name :
       {"affectivity.json", "recommendation.json", "plan.json", "metrics.json", "model.amrp-model"}) {
    REQUIRE(artifacts.count(name) == 1);
    CHECK(!read_text(artifacts.at(name)).empty());
  }
}

TEST_CASE("two pipeline runs produce byte-identical artifacts", "[pipeline]") {
  testsup::TempDir tmp("pipe_det");
  auto cfg_a = small_config(tmp.path("a"));
  auto cfg_b = small_config(tmp.path("b"));
  // a different worker count must not change any output byte
  cfg_b.parallelism = 1;

  const auto art_a = write_artifacts(run_pipeline(cfg_a), cfg_a);
  const auto art_b = write_artifacts(run_pipeline(cfg_b), cfg_b);
  REQUIRE(art_a.size() == art_b.size());
  for (const auto& [name, path_a] : art_a) {
    INFO(name);
    CHECK(read_text(path_a) == read_text(art_b.at(name)));
  }
}

TEST_CASE("file-backed sessions reproduce the in-memory synthetic run", "[pipeline]") {
  testsup::TempDir tmp("pipe_files");
  auto cfg = small_config(tmp.path("out"));

  // write the same synthetic sessions to CSV and run from files
  PipelineConfig file_cfg = cfg;
  file_cfg.synth.reset();
  for (std::size_t s = 0; s < 2; ++s) {
    auto [rec, labels] =
        synthesize_session(cfg.protocol, cfg.layout, cfg.synth->profile, derive_seed(cfg.seed, 900, s));
    const std::string rpath = tmp.path("rec" + std::to_string(s) + ".csv");
    const std::string lpath = tmp.path("lab" + std::to_string(s) + ".csv");
    save_recording(rec, rpath);
    save_labels(labels, lpath);
    file_cfg.sessions.push_back({rpath, lpath});
  }

  const auto from_files = run_pipeline(file_cfg);
  const auto from_synth = run_pipeline(cfg);
  for (std::size_t t = 0; t < 3; ++t) {
    CHECK(from_files.targets[t].evaluation.report.accuracy ==
          from_synth.targets[t].evaluation.report.accuracy);
  }
  CHECK(from_files.affectivity.x == from_synth.affectivity.x);
}

TEST_CASE("subject holdout keeps whole subjects out of training", "[pipeline]") {
  std::vector<RowProvenance> origin;
  for (std::size_t s = 0; s < 5; ++s)
    for (std::size_t e = 0; e < 7; ++e) origin.push_back({s, e % 3, e});
  const auto idx = detail::subject_split(origin, 0.6, 99);
  CHECK(idx.train.size() + idx.test.size() == origin.size());

  std::set<std::size_t> train_subjects, test_subjects;
  for (std::size_t i : idx.train) train_subjects.insert(origin[i].subject);
  for (std::size_t i : idx.test) test_subjects.insert(origin[i].subject);
  CHECK(train_subjects.size() == 3);
  CHECK(test_subjects.size() == 2);
  for (std::size_t s : test_subjects) CHECK(train_subjects.count(s) == 0);

  // whole pipeline accepts the option
  testsup::TempDir tmp("pipe_subj");
  auto cfg = small_config(tmp.path("out"));
  cfg.synth->subjects = 3;
  cfg.split_by_subject = true;
  const auto result = run_pipeline(cfg);
  for (const auto& t : result.targets) CHECK(t.evaluation.report.confusion.n() > 0);
}

TEST_CASE("pipeline errors carry the failing stage's cause", "[pipeline]") {
  testsup::TempDir tmp("pipe_err");
  auto cfg = small_config(tmp.path("out"));
  cfg.food_db_path = "/nonexistent/foods.json";
  try {
    run_pipeline(cfg);
    FAIL("expected MissingFile");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::missing_file);
  }

  PipelineConfig empty;
  empty.food_db_path = std::string(AMRP_TEST_DATA_DIR) + "/foods.json";
  try {
    run_pipeline(empty);
    FAIL("expected ConfigError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::config_error);
  }
}
