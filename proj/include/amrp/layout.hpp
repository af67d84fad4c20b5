#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "amrp/common.hpp"

namespace amrp {

struct ChannelLayout {
  std::vector<std::string> names;
  std::vector<std::string> reference_names;
  std::vector<std::string> frontal_subset;  // ordered sublist of names

  void validate() const {
    std::set<std::string> seen(names.begin(), names.end());
    if (seen.size() != names.size()) fail(Errc::channel_mismatch, "duplicate channel names");
    for (const auto& f : frontal_subset) {
      if (!seen.count(f)) fail(Errc::unknown_channel, "frontal channel not in layout: " + f);
    }
  }

  std::size_t index_of(const std::string& name) const {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) fail(Errc::unknown_channel, name);
    return static_cast<std::size_t>(it - names.begin());
  }
};

// 14-electrode wireless headset montage. The saline headset exposes 13
// distinctly named sites plus AF4; P3/P4 serve as references.
inline ChannelLayout default_layout() {
  ChannelLayout l;
  l.names = {"AF3", "F7", "F3", "FC5", "T7", "P7", "O1",
             "O2",  "P8", "T8", "FC6", "F4", "F8", "AF4"};
  l.reference_names = {"P3", "P4"};
  // Frontal pairs available on this montage, in layout order. FC1/FC2 do not
  // exist on the 14-channel cap; AF3/AF4 stand in as the nearest frontal pair.
  l.frontal_subset = {"AF3", "F7", "F3", "FC5", "FC6", "F4", "F8", "AF4"};
  return l;
}

struct StimulusProtocol {
  std::size_t food_count = 40;
  double stimulus_seconds = 10.0;
  double calm_seconds = 17.0;
  double sample_rate_hz = 128.0;

  void validate() const {
    if (food_count == 0 || stimulus_seconds <= 0 || calm_seconds <= 0 || sample_rate_hz <= 0)
      fail(Errc::config_error, "stimulus protocol requires positive counts and durations");
  }

  std::size_t stimulus_samples() const {
    return static_cast<std::size_t>(stimulus_seconds * sample_rate_hz + 0.5);
  }
  std::size_t block_samples() const {
    return static_cast<std::size_t>((stimulus_seconds + calm_seconds) * sample_rate_hz + 0.5);
  }
  // full session: one stimulus+calm block per food
  std::size_t session_samples() const { return food_count * block_samples(); }
};

}  // namespace amrp
