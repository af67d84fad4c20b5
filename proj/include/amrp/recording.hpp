#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "amrp/csv.hpp"
#include "amrp/layout.hpp"
#include "amrp/num_format.hpp"

namespace amrp {

struct EegRecording {
  ChannelLayout layout;
  double sample_rate_hz = 128.0;
  ChannelData samples;  // samples[ch][i], microvolts
  std::optional<StimulusProtocol> protocol;

  std::size_t channel_count() const { return samples.size(); }
  std::size_t sample_count() const { return samples.empty() ? 0 : samples[0].size(); }

  void validate() const {
    layout.validate();
    if (samples.size() != layout.names.size())
      fail(Errc::channel_mismatch, "sample rows do not match layout");
    for (const auto& row : samples) {
      if (row.size() != sample_count()) fail(Errc::channel_mismatch, "ragged channel lengths");
      if (!all_finite(row)) fail(Errc::malformed_row, "non-finite sample value");
    }
  }
};

// One stimulus window cut from a session; calm segments are dropped.
struct Trial {
  std::size_t food_index = 0;
  ChannelData samples;  // channel-major, stimulus window only
};

// CSV schema: header "t,<ch1>,...,<chN>", one row per sample instant,
// decimal microvolts, '.' separator.
inline EegRecording load_recording(const std::string& path, const ChannelLayout& layout,
                                   double sample_rate_hz) {
  const auto lines = read_lines(path);
  if (lines.empty()) fail(Errc::malformed_row, "empty file: " + path);

  const auto header = split_csv_line(lines[0]);
  if (header.size() != layout.names.size() + 1 || trim(header[0]) != "t")
    fail(Errc::channel_mismatch,
         "header must be t,<channels> with " + std::to_string(layout.names.size()) + " channels");
  for (std::size_t c = 0; c < layout.names.size(); ++c) {
    if (trim(header[c + 1]) != layout.names[c])
      fail(Errc::channel_mismatch, "column " + std::to_string(c + 1) + " is '" + trim(header[c + 1]) +
                                       "', layout expects '" + layout.names[c] + "'");
  }

  EegRecording rec;
  rec.layout = layout;
  rec.sample_rate_hz = sample_rate_hz;
  rec.samples.assign(layout.names.size(), {});
  const std::size_t n_rows = lines.size() - 1;
  for (auto& ch : rec.samples) ch.reserve(n_rows);

  for (std::size_t r = 1; r < lines.size(); ++r) {
    if (lines[r].empty() && r + 1 == lines.size()) break;  // trailing newline
    const auto cells = split_csv_line(lines[r]);
    if (cells.size() != layout.names.size() + 1)
      fail(Errc::malformed_row, "row " + std::to_string(r) + ": expected " +
                                    std::to_string(layout.names.size() + 1) + " columns, got " +
                                    std::to_string(cells.size()));
    bool ok = false;
    (void)parse_double(cells[0], ok);
    if (!ok) fail(Errc::malformed_row, "row " + std::to_string(r) + ": bad time value");
    for (std::size_t c = 0; c < layout.names.size(); ++c) {
      const double v = parse_double(cells[c + 1], ok);
      if (!ok || !std::isfinite(v))
        fail(Errc::malformed_row, "row " + std::to_string(r) + ": non-numeric cell in column " +
                                      std::to_string(c + 1));
      rec.samples[c].push_back(v);
    }
  }
  rec.validate();
  return rec;
}

// Layout taken from the CSV header itself; channels that belong to the
// default frontal subset keep their frontal role.
inline EegRecording load_recording_any(const std::string& path, double sample_rate_hz) {
  const auto lines = read_lines(path);
  if (lines.empty()) fail(Errc::malformed_row, "empty file: " + path);
  const auto header = split_csv_line(lines[0]);
  if (header.size() < 2 || trim(header[0]) != "t")
    fail(Errc::channel_mismatch, "header must be t,<channels>");
  ChannelLayout layout;
  for (std::size_t c = 1; c < header.size(); ++c) layout.names.push_back(trim(header[c]));
  const auto def = default_layout();
  for (const auto& name : def.frontal_subset)
    if (std::find(layout.names.begin(), layout.names.end(), name) != layout.names.end())
      layout.frontal_subset.push_back(name);
  return load_recording(path, layout, sample_rate_hz);
}

inline std::string recording_to_csv(const EegRecording& rec) {
  std::string out = "t";
  for (const auto& n : rec.layout.names) {
    out += ',';
    out += n;
  }
  out += '\n';
  const std::size_t n = rec.sample_count();
  for (std::size_t i = 0; i < n; ++i) {
    out += format_exact(static_cast<double>(i) / rec.sample_rate_hz);
    for (std::size_t c = 0; c < rec.samples.size(); ++c) {
      out += ',';
      out += format_exact(rec.samples[c][i]);
    }
    out += '\n';
  }
  return out;
}

inline void save_recording(const EegRecording& rec, const std::string& path) {
  write_text(path, recording_to_csv(rec));
}

// Cuts food_count stimulus windows; trial k starts at k*(stimulus+calm)*rate.
inline std::vector<Trial> segment_trials(const EegRecording& rec, const StimulusProtocol& protocol) {
  protocol.validate();
  const std::size_t block = protocol.block_samples();
  const std::size_t stim = protocol.stimulus_samples();
  const std::size_t needed = (protocol.food_count - 1) * block + stim;
  if (rec.sample_count() < needed)
    fail(Errc::recording_too_short, "recording has " + std::to_string(rec.sample_count()) +
                                        " samples, protocol needs " + std::to_string(needed));
  std::vector<Trial> trials;
  trials.reserve(protocol.food_count);
  for (std::size_t k = 0; k < protocol.food_count; ++k) {
    Trial t;
    t.food_index = k;
    t.samples.resize(rec.channel_count());
    const std::size_t start = k * block;
    for (std::size_t c = 0; c < rec.channel_count(); ++c)
      t.samples[c].assign(rec.samples[c].begin() + start, rec.samples[c].begin() + start + stim);
    trials.push_back(std::move(t));
  }
  return trials;
}

}  // namespace amrp
