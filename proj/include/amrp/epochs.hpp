#pragma once

#include <string>
#include <vector>

#include "amrp/recording.hpp"

namespace amrp {

// Fixed-length window cut from a stimulus trial.
struct Epoch {
  std::size_t trial_index = 0;
  std::size_t window_index = 0;
  double duration_seconds = 1.0;
  ChannelData samples;  // channel-major

  std::size_t length() const { return samples.empty() ? 0 : samples[0].size(); }
};

// Non-overlapping consecutive epochs; a trailing remainder shorter than one
// epoch is discarded.
inline std::vector<Epoch> window_epochs(const Trial& trial, double epoch_seconds,
                                        double sample_rate_hz) {
  const std::size_t trial_len = trial.samples.empty() ? 0 : trial.samples[0].size();
  const std::size_t epoch_len = static_cast<std::size_t>(epoch_seconds * sample_rate_hz + 0.5);
  if (epoch_len == 0 || epoch_len > trial_len)
    fail(Errc::epoch_longer_than_trial, "epoch " + std::to_string(epoch_len) + " samples, trial " +
                                            std::to_string(trial_len));
  const std::size_t count = trial_len / epoch_len;
  std::vector<Epoch> epochs;
  epochs.reserve(count);
  for (std::size_t w = 0; w < count; ++w) {
    Epoch e;
    e.trial_index = trial.food_index;
    e.window_index = w;
    e.duration_seconds = epoch_seconds;
    e.samples.resize(trial.samples.size());
    for (std::size_t c = 0; c < trial.samples.size(); ++c)
      e.samples[c].assign(trial.samples[c].begin() + w * epoch_len,
                          trial.samples[c].begin() + (w + 1) * epoch_len);
    epochs.push_back(std::move(e));
  }
  return epochs;
}

enum class ChannelMode { all, frontal };

inline ChannelMode channel_mode_from_name(const std::string& s) {
  if (s == "all") return ChannelMode::all;
  if (s == "frontal") return ChannelMode::frontal;
  fail(Errc::parse_error, "channel mode must be 'all' or 'frontal', got '" + s + "'");
}

// Restrict a recording to the mode's channel subset, layout order preserved.
inline EegRecording select_channels(const EegRecording& rec, ChannelMode mode) {
  if (mode == ChannelMode::all) return rec;
  EegRecording out;
  out.sample_rate_hz = rec.sample_rate_hz;
  out.protocol = rec.protocol;
  out.layout.reference_names = rec.layout.reference_names;
  for (const auto& name : rec.layout.frontal_subset) {
    const std::size_t idx = rec.layout.index_of(name);  // throws UnknownChannel
    out.layout.names.push_back(name);
    out.samples.push_back(rec.samples[idx]);
  }
  out.layout.frontal_subset = out.layout.names;
  if (out.layout.names.empty()) fail(Errc::unknown_channel, "layout has no frontal subset");
  return out;
}

}  // namespace amrp
