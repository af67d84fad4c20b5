#include <catch2/catch_amalgamated.hpp>

#include "amrp/food.hpp"
#include "amrp/recording.hpp"
#include "amrp/survey.hpp"
#include "amrp/synthetic.hpp"

#include "test_support.hpp"

using namespace amrp;

namespace {

ChannelLayout tiny_layout(std::size_t n) {
  ChannelLayout l;
  for (std::size_t i = 0; i < n; ++i) l.names.push_back("C" + std::to_string(i));
  l.frontal_subset = {l.names[0]};
  return l;
}

StimulusProtocol tiny_protocol(std::size_t foods) {
  StimulusProtocol p;
  p.food_count = foods;
  return p;
}

}  // namespace

TEST_CASE("load_recording ingests a zero matrix verbatim", "[data_io]") {
  testsup::TempDir tmp("rec_zero");
  const auto layout = default_layout();
  std::string csv = "t";
  for (const auto& n : layout.names) csv += "," + n;
  csv += "\n";
  for (int r = 0; r < 3; ++r) {
    csv += std::to_string(r);
    for (std::size_t c = 0; c < 14; ++c) csv += ",0";
    csv += "\n";
  }
  write_text(tmp.path("zero.csv"), csv);

  const auto rec = load_recording(tmp.path("zero.csv"), layout, 128.0);
  REQUIRE(rec.channel_count() == 14);
  REQUIRE(rec.sample_count() == 3);
  for (const auto& ch : rec.samples)
    for (double v : ch) CHECK(v == 0.0);
}

TEST_CASE("load_recording reports the malformed row", "[data_io]") {
  testsup::TempDir tmp("rec_bad");
  const auto layout = tiny_layout(2);
  write_text(tmp.path("bad.csv"), "t,C0,C1\n0,1.0,2.0\n0.0078125,oops,2.0\n");
  try {
    load_recording(tmp.path("bad.csv"), layout, 128.0);
    FAIL("expected MalformedRow");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::malformed_row);
    CHECK(std::string(e.what()).find("row 2") != std::string::npos);
  }
}

TEST_CASE("load_recording rejects missing files and wrong headers", "[data_io]") {
  const auto layout = tiny_layout(2);
  CHECK_THROWS_AS(load_recording("/nonexistent/nope.csv", layout, 128.0), Error);

  testsup::TempDir tmp("rec_hdr");
  write_text(tmp.path("hdr.csv"), "t,C0,WRONG\n0,1,2\n");
  try {
    load_recording(tmp.path("hdr.csv"), layout, 128.0);
    FAIL("expected ChannelMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::channel_mismatch);
  }
}

TEST_CASE("synthesized session round-trips through CSV bit-for-bit", "[data_io]") {
  testsup::TempDir tmp("rec_rt");
  const auto layout = tiny_layout(2);
  const auto protocol = tiny_protocol(2);
  auto [rec, labels] = synthesize_session(protocol, layout, default_class_profile(), 42);

  save_recording(rec, tmp.path("s.csv"));
  const auto loaded = load_recording(tmp.path("s.csv"), layout, protocol.sample_rate_hz);
  REQUIRE(loaded.sample_count() == rec.sample_count());
  for (std::size_t c = 0; c < rec.channel_count(); ++c)
    for (std::size_t i = 0; i < rec.sample_count(); ++i)
      REQUIRE(loaded.samples[c][i] == rec.samples[c][i]);

  // write(load(x)) == x, byte level
  save_recording(loaded, tmp.path("s2.csv"));
  CHECK(read_text(tmp.path("s.csv")) == read_text(tmp.path("s2.csv")));
}

TEST_CASE("load_labels parses rows and enforces binary labels", "[data_io]") {
  testsup::TempDir tmp("labels");
  write_text(tmp.path("l.csv"), "food,like,excitement,feelings\n0,1,1,0\n");
  const auto labels = load_labels(tmp.path("l.csv"));
  CHECK(labels.at(0).like == 1);
  CHECK(labels.at(0).excitement == 1);
  CHECK(labels.at(0).feelings == 0);

  write_text(tmp.path("bad.csv"), "food,like,excitement,feelings\n0,2,0,0\n");
  try {
    load_labels(tmp.path("bad.csv"));
    FAIL("expected OutOfRangeLabel");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::out_of_range_label);
  }

  write_text(tmp.path("dup.csv"), "food,like,excitement,feelings\n0,1,0,0\n0,0,0,1\n");
  try {
    load_labels(tmp.path("dup.csv"));
    FAIL("expected DuplicateFoodIndex");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::duplicate_food_index);
  }
}

TEST_CASE("a full survey covers every food index", "[data_io]") {
  testsup::TempDir tmp("labels40");
  std::string csv = "food,like,excitement,feelings\n";
  for (int f = 0; f < 40; ++f) csv += std::to_string(f) + ",1,0,1\n";
  write_text(tmp.path("l.csv"), csv);
  const auto labels = load_labels(tmp.path("l.csv"));
  REQUIRE(labels.by_food.size() == 40);
  for (std::size_t f = 0; f < 40; ++f) CHECK(labels.by_food.count(f) == 1);
}

TEST_CASE("food database loads, validates and rejects bad entries", "[data_io]") {
  testsup::TempDir tmp("food");
  write_text(tmp.path("db.json"),
             R"([{"id":0,"name":"Omelete","calories":154,"slots":["breakfast"]}])");
  const auto db = load_food_db(tmp.path("db.json"));
  REQUIRE(db.items.size() == 1);
  CHECK(db.items[0].name == "Omelete");
  CHECK(db.items[0].calories == 154.0);
  CHECK(db.items[0].allows(MealSlot::breakfast));

  write_text(tmp.path("zero.json"), R"([{"id":0,"name":"X","calories":0,"slots":["lunch"]}])");
  try {
    load_food_db(tmp.path("zero.json"));
    FAIL("expected NonPositiveCalories");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::non_positive_calories);
  }

  write_text(tmp.path("noslots.json"), R"([{"id":0,"name":"X","calories":10,"slots":[]}])");
  try {
    load_food_db(tmp.path("noslots.json"));
    FAIL("expected EmptySlots");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::empty_slots);
  }

  write_text(tmp.path("dup.json"),
             R"([{"id":3,"name":"A","calories":10,"slots":["lunch"]},
                 {"id":3,"name":"B","calories":20,"slots":["dinner"]}])");
  try {
    load_food_db(tmp.path("dup.json"));
    FAIL("expected DuplicateId");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::duplicate_id);
  }
}

TEST_CASE("a 40-entry database yields 40 items", "[data_io]") {
  testsup::TempDir tmp("food40");
  std::string json = "[";
  for (int i = 0; i < 40; ++i) {
    if (i) json += ",";
    json += R"({"id":)" + std::to_string(i) + R"(,"name":"food)" + std::to_string(i) +
            R"(","calories":100,"slots":["lunch"]})";
  }
  json += "]";
  write_text(tmp.path("db.json"), json);
  CHECK(load_food_db(tmp.path("db.json")).items.size() == 40);
}

TEST_CASE("synthesize_session is deterministic in all outputs", "[data_io]") {
  const auto layout = tiny_layout(2);
  const auto protocol = tiny_protocol(2);
  auto [r1, l1] = synthesize_session(protocol, layout, default_class_profile(), 7);
  auto [r2, l2] = synthesize_session(protocol, layout, default_class_profile(), 7);
  REQUIRE(r1.sample_count() == r2.sample_count());
  for (std::size_t c = 0; c < r1.channel_count(); ++c)
    for (std::size_t i = 0; i < r1.sample_count(); ++i)
      REQUIRE(r1.samples[c][i] == r2.samples[c][i]);
  for (std::size_t f = 0; f < protocol.food_count; ++f) {
    CHECK(l1.at(f).like == l2.at(f).like);
    CHECK(l1.at(f).excitement == l2.at(f).excitement);
    CHECK(l1.at(f).feelings == l2.at(f).feelings);
  }
}

TEST_CASE("session length follows the stimulus protocol arithmetic", "[data_io]") {
  const auto layout = tiny_layout(1);
  const auto protocol = tiny_protocol(2);
  auto [rec, labels] = synthesize_session(protocol, layout, default_class_profile(), 1);
  CHECK(rec.sample_count() == 2u * 27u * 128u);
}

TEST_CASE("label-1 stimulus windows carry boosted band power", "[data_io]") {
  const auto layout = tiny_layout(1);
  auto protocol = tiny_protocol(8);
  auto [rec, labels] = synthesize_session(protocol, layout, default_class_profile(), 3);
  const auto trials = segment_trials(rec, protocol);

  double p1 = 0.0, p0 = 0.0;
  std::size_t n1 = 0, n0 = 0;
  for (const auto& t : trials) {
    const double alpha = testsup::band_energy_dft(t.samples[0], 128.0, 8.0, 12.0);
    if (labels.at(t.food_index).like == 1) {
      p1 += alpha;
      ++n1;
    } else {
      p0 += alpha;
      ++n0;
    }
  }
  REQUIRE(n1 > 0);
  REQUIRE(n0 > 0);
  CHECK(p1 / static_cast<double>(n1) > p0 / static_cast<double>(n0));
}

TEST_CASE("segment_trials cuts aligned stimulus windows", "[data_io]") {
  const auto layout = tiny_layout(2);
  const auto protocol = tiny_protocol(40);
  auto [rec, labels] = synthesize_session(protocol, layout, default_class_profile(), 9);

  const auto trials = segment_trials(rec, protocol);
  REQUIRE(trials.size() == 40);
  for (const auto& t : trials)
    for (const auto& ch : t.samples) REQUIRE(ch.size() == 1280);

  // trial 1 must equal the raw samples at [27*128, 27*128 + 1280)
  const std::size_t start = 27 * 128;
  for (std::size_t c = 0; c < rec.channel_count(); ++c)
    for (std::size_t i = 0; i < 1280; ++i)
      REQUIRE(trials[1].samples[c][i] == rec.samples[c][start + i]);

  // truncated mid-session (into the final stimulus window) fails loudly
  EegRecording cut = rec;
  const std::size_t needed =
      (protocol.food_count - 1) * protocol.block_samples() + protocol.stimulus_samples();
  for (auto& ch : cut.samples) ch.resize(needed - 1);
  try {
    segment_trials(cut, protocol);
    FAIL("expected RecordingTooShort");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::recording_too_short);
  }
}
