#pragma once

#include <string>
#include <vector>

#include "amrp/csv.hpp"
#include "amrp/dataset.hpp"
#include "amrp/num_format.hpp"
#include "amrp/survey.hpp"

namespace amrp {

// Per-epoch feature table with provenance and all three survey labels.
// CSV header: method,subject,food,epoch,like,excitement,feelings,f0..fN
struct FeatureTable {
  FeatureMethod method = FeatureMethod::stft;
  std::vector<LabeledRow> rows;      // label field unused here
  std::vector<LabelTriple> triples;  // aligned with rows

  std::size_t dim() const { return rows.empty() ? 0 : rows[0].features.size(); }

  LabeledDataset dataset_for(std::size_t target) const {
    LabeledDataset d;
    d.method = method;
    d.target = target_name(target);
    d.rows = rows;
    for (std::size_t i = 0; i < rows.size(); ++i) d.rows[i].label = triples[i].get(target);
    return d;
  }
};

inline std::string feature_table_to_csv(const FeatureTable& t) {
  std::string out = "method,subject,food,epoch,like,excitement,feelings";
  for (std::size_t j = 0; j < t.dim(); ++j) out += ",f" + std::to_string(j);
  out += '\n';
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& r = t.rows[i];
    const auto& l = t.triples[i];
    out += method_name(t.method);
    out += ',' + std::to_string(r.origin.subject);
    out += ',' + std::to_string(r.origin.trial);
    out += ',' + std::to_string(r.origin.epoch);
    out += ',' + std::to_string(l.like);
    out += ',' + std::to_string(l.excitement);
    out += ',' + std::to_string(l.feelings);
    for (double v : r.features) {
      out += ',';
      out += format_exact(v);
    }
    out += '\n';
  }
  return out;
}

inline FeatureTable parse_feature_table(const std::vector<std::string>& lines) {
  if (lines.empty()) fail(Errc::malformed_row, "empty feature table");
  const auto header = split_csv_line(lines[0]);
  if (header.size() < 8 || header[0] != "method")
    fail(Errc::malformed_row, "feature table header must start with method,subject,food,epoch");
  FeatureTable t;
  const std::size_t dim = header.size() - 7;
  bool first = true;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    if (lines[r].empty() && r + 1 == lines.size()) break;
    const auto cells = split_csv_line(lines[r]);
    if (cells.size() != header.size())
      fail(Errc::malformed_row, "feature table row " + std::to_string(r) + ": wrong column count");
    if (first) {
      t.method = method_from_name(trim(cells[0]));
      first = false;
    } else if (trim(cells[0]) != method_name(t.method)) {
      fail(Errc::malformed_row, "feature table mixes extraction methods");
    }
    LabeledRow row;
    LabelTriple triple;
    bool ok = true, all_ok = true;
    row.origin.subject = static_cast<std::size_t>(parse_long(cells[1], ok));
    all_ok &= ok;
    row.origin.trial = static_cast<std::size_t>(parse_long(cells[2], ok));
    all_ok &= ok;
    row.origin.epoch = static_cast<std::size_t>(parse_long(cells[3], ok));
    all_ok &= ok;
    triple.like = static_cast<int>(parse_long(cells[4], ok));
    all_ok &= ok;
    triple.excitement = static_cast<int>(parse_long(cells[5], ok));
    all_ok &= ok;
    triple.feelings = static_cast<int>(parse_long(cells[6], ok));
    all_ok &= ok;
    row.features.reserve(dim);
    for (std::size_t c = 7; c < cells.size(); ++c) {
      row.features.push_back(parse_double(cells[c], ok));
      all_ok &= ok;
    }
    if (!all_ok) fail(Errc::malformed_row, "feature table row " + std::to_string(r));
    t.rows.push_back(std::move(row));
    t.triples.push_back(triple);
  }
  return t;
}

inline FeatureTable load_feature_table(const std::string& path) {
  return parse_feature_table(read_lines(path));
}

}  // namespace amrp
