#pragma once

#include <map>
#include <string>

#include "amrp/csv.hpp"
#include "amrp/num_format.hpp"

namespace amrp {

// Binary self-assessment per food: like/excitement in {0,1}, feelings with
// pleasant=1, disgust=0.
struct LabelTriple {
  int like = 0;
  int excitement = 0;
  int feelings = 0;

  int get(std::size_t target) const {
    switch (target) {
      case 0: return like;
      case 1: return excitement;
      default: return feelings;
    }
  }
};

inline const char* target_name(std::size_t target) {
  switch (target) {
    case 0: return "like";
    case 1: return "excitement";
    default: return "feelings";
  }
}

struct SurveyLabels {
  std::map<std::size_t, LabelTriple> by_food;

  const LabelTriple& at(std::size_t food) const {
    auto it = by_food.find(food);
    if (it == by_food.end()) fail(Errc::out_of_range_label, "no labels for food " + std::to_string(food));
    return it->second;
  }
};

// CSV schema: header "food,like,excitement,feelings", one row per food.
inline SurveyLabels load_labels(const std::string& path) {
  const auto lines = read_lines(path);
  if (lines.empty()) fail(Errc::malformed_row, "empty labels file");
  if (trim(lines[0]) != "food,like,excitement,feelings")
    fail(Errc::malformed_row, "labels header must be food,like,excitement,feelings");

  SurveyLabels labels;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    if (lines[r].empty() && r + 1 == lines.size()) break;
    const auto cells = split_csv_line(lines[r]);
    if (cells.size() != 4)
      fail(Errc::malformed_row, "labels row " + std::to_string(r) + ": expected 4 columns");
    bool ok = false;
    const long food = parse_long(cells[0], ok);
    if (!ok || food < 0) fail(Errc::malformed_row, "labels row " + std::to_string(r) + ": bad food index");
    LabelTriple t;
    int* fields[3] = {&t.like, &t.excitement, &t.feelings};
    for (int c = 0; c < 3; ++c) {
      const long v = parse_long(cells[c + 1], ok);
      if (!ok) fail(Errc::malformed_row, "labels row " + std::to_string(r) + ": non-numeric label");
      if (v != 0 && v != 1)
        fail(Errc::out_of_range_label,
             "labels row " + std::to_string(r) + ": value " + std::to_string(v) + " not in {0,1}");
      *fields[c] = static_cast<int>(v);
    }
    if (!labels.by_food.emplace(static_cast<std::size_t>(food), t).second)
      fail(Errc::duplicate_food_index, "food " + std::to_string(food) + " listed twice");
  }
  return labels;
}

inline std::string labels_to_csv(const SurveyLabels& labels) {
  std::string out = "food,like,excitement,feelings\n";
  for (const auto& [food, t] : labels.by_food) {
    out += std::to_string(food);
    out += ',';
    out += std::to_string(t.like);
    out += ',';
    out += std::to_string(t.excitement);
    out += ',';
    out += std::to_string(t.feelings);
    out += '\n';
  }
  return out;
}

inline void save_labels(const SurveyLabels& labels, const std::string& path) {
  write_text(path, labels_to_csv(labels));
}

}  // namespace amrp
