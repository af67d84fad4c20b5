#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "amrp/bands.hpp"
#include "amrp/recording.hpp"
#include "amrp/rng.hpp"
#include "amrp/survey.hpp"

namespace amrp {

// Label-conditioned band-power boost for one affectivity target.
struct TargetBandBoost {
  std::string band;        // Table-style band name, e.g. "Alpha"
  double power_gain = 4.0; // applied to stimulus windows of label-1 foods
};

struct ClassProfile {
  std::array<TargetBandBoost, 3> per_target;  // like, excitement, feelings

  void validate() const {
    for (const auto& t : per_target) {
      if (t.band.empty()) fail(Errc::invalid_profile, "class profile has an empty band");
      if (!(t.power_gain > 0.0)) fail(Errc::invalid_profile, "band-power gain must be positive");
    }
  }
};

// Distinct bands per target so each label stays independently learnable.
inline ClassProfile default_class_profile() {
  return ClassProfile{{TargetBandBoost{"Alpha", 4.0}, TargetBandBoost{"Beta", 4.0},
                       TargetBandBoost{"Theta", 4.0}}};
}

// Deterministic survey: each target gets an exactly half/half food assignment,
// shuffled by a per-target stream.
inline SurveyLabels synthesize_labels(const StimulusProtocol& protocol, std::uint64_t seed) {
  SurveyLabels labels;
  std::array<std::vector<int>, 3> cols;
  for (std::size_t t = 0; t < 3; ++t) {
    auto& col = cols[t];
    col.assign(protocol.food_count, 0);
    for (std::size_t i = 0; i < protocol.food_count / 2; ++i) col[i] = 1;
    Rng rng(derive_seed(seed, 101, t));
    rng.shuffle(col);
  }
  for (std::size_t k = 0; k < protocol.food_count; ++k)
    labels.by_food[k] = LabelTriple{cols[0][k], cols[1][k], cols[2][k]};
  return labels;
}

// Per-band Gaussian noise filtered to the band table, summed per channel,
// with stimulus windows of label-1 foods scaled to the profile's band-power
// gain. Pure function of (protocol, layout, profile, seed).
inline std::pair<EegRecording, SurveyLabels> synthesize_session(const StimulusProtocol& protocol,
                                                                const ChannelLayout& layout,
                                                                const ClassProfile& profile,
                                                                std::uint64_t seed) {
  protocol.validate();
  layout.validate();
  profile.validate();

  const SurveyLabels labels = synthesize_labels(protocol, seed);
  const auto bands = default_band_table();
  const std::size_t n = protocol.session_samples();
  const std::size_t block = protocol.block_samples();
  const std::size_t stim = protocol.stimulus_samples();

  EegRecording rec;
  rec.layout = layout;
  rec.sample_rate_hz = protocol.sample_rate_hz;
  rec.protocol = protocol;
  rec.samples.assign(layout.names.size(), Signal(n, 0.0));

  for (std::size_t c = 0; c < layout.names.size(); ++c) {
    for (std::size_t b = 0; b < bands.size(); ++b) {
      Rng rng(derive_seed(seed, 2001, c, b));
      Signal noise(n);
      for (auto& v : noise) v = 10.0 * rng.normal();
      Signal comp = bandpass_filter(noise, bands[b].lo_hz, bands[b].hi_hz, 4, protocol.sample_rate_hz);

      for (std::size_t k = 0; k < protocol.food_count; ++k) {
        double gain = 1.0;
        const LabelTriple& t = labels.at(k);
        for (std::size_t target = 0; target < 3; ++target) {
          if (profile.per_target[target].band == bands[b].name && t.get(target) == 1)
            gain *= profile.per_target[target].power_gain;
        }
        if (gain != 1.0) {
          const double amp = std::sqrt(gain);
          const std::size_t start = k * block;
          for (std::size_t i = start; i < start + stim && i < n; ++i) comp[i] *= amp;
        }
      }
      auto& out = rec.samples[c];
      for (std::size_t i = 0; i < n; ++i) out[i] += comp[i];
    }
  }
  return {std::move(rec), labels};
}

}  // namespace amrp
