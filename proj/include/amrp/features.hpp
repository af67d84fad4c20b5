#pragma once

#include <string>
#include <vector>

#include "amrp/bands.hpp"
#include "amrp/emd.hpp"
#include "amrp/epochs.hpp"
#include "amrp/hilbert.hpp"
#include "amrp/stft.hpp"
#include "amrp/wavelet.hpp"

namespace amrp {

enum class FeatureMethod { stft = 0, dwt = 1, hht = 2 };

constexpr std::size_t kFeatureMethodCount = 3;

inline const char* method_name(FeatureMethod m) {
  switch (m) {
    case FeatureMethod::stft: return "stft";
    case FeatureMethod::dwt: return "dwt";
    case FeatureMethod::hht: return "hht";
  }
  return "?";
}

inline FeatureMethod method_from_name(const std::string& s) {
  for (std::size_t i = 0; i < kFeatureMethodCount; ++i)
    if (s == method_name(static_cast<FeatureMethod>(i))) return static_cast<FeatureMethod>(i);
  fail(Errc::parse_error, "unknown feature method: " + s);
}

constexpr std::size_t kStatsPerGroup = 4;  // mean power, std, energy, peak

struct FeatureVector {
  FeatureMethod method = FeatureMethod::stft;
  std::size_t channels = 0;
  std::size_t groups = 0;  // bands (stft), levels (dwt), or IMFs (hht)
  std::vector<double> values;

  std::size_t size() const { return values.size(); }

  void validate() const {
    if (values.size() != channels * groups * kStatsPerGroup)
      fail(Errc::dimension_mismatch, "feature vector length does not match its descriptor");
    if (!all_finite(values)) fail(Errc::non_finite_feature, "non-finite feature value");
  }
};

struct FeatureConfig {
  // stft
  std::size_t stft_window = 64;
  std::size_t stft_hop = 32;
  WindowFn stft_window_fn = WindowFn::hann;
  std::vector<BandSpec> band_table = default_band_table();
  // dwt
  std::string dwt_wavelet = "db4";
  std::size_t dwt_levels = 5;
  // hht
  EmdConfig emd;
  std::size_t hht_imf_count = 4;
};

namespace detail {

// the per-group statistic block: mean power, std of power, total energy, peak
inline void push_stats(std::vector<double>& out, const std::vector<double>& power, double peak) {
  if (power.empty()) {
    out.insert(out.end(), kStatsPerGroup, 0.0);
    return;
  }
  double sum = 0.0;
  for (double p : power) sum += p;
  const double mean = sum / static_cast<double>(power.size());
  double var = 0.0;
  for (double p : power) var += (p - mean) * (p - mean);
  var /= static_cast<double>(power.size());
  out.push_back(mean);
  out.push_back(std::sqrt(var));
  out.push_back(sum);
  out.push_back(peak);
}

}  // namespace detail

// Spectrogram cells aggregated into the band table, channel-major.
inline FeatureVector assemble_stft_features(const std::vector<Spectrogram>& per_channel,
                                            const std::vector<BandSpec>& bands) {
  if (per_channel.empty()) fail(Errc::missing_channel, "no channels");
  FeatureVector fv;
  fv.method = FeatureMethod::stft;
  fv.channels = per_channel.size();
  fv.groups = bands.size();
  for (const auto& spec : per_channel) {
    for (const auto& band : bands) {
      std::vector<double> power;
      double peak = 0.0;
      for (std::size_t k = 0; k < spec.bin_count(); ++k) {
        const double f = spec.freqs_hz[k];
        if (f < band.lo_hz || f >= band.hi_hz) continue;
        for (std::size_t m = 0; m < spec.frame_count(); ++m) {
          const double mag = spec.magnitudes[m][k];
          power.push_back(mag * mag);
          if (mag > peak) peak = mag;
        }
      }
      detail::push_stats(fv.values, power, peak);
    }
  }
  fv.validate();
  return fv;
}

// Detail subbands D1..DL as groups, channel-major.
inline FeatureVector assemble_dwt_features(const std::vector<WaveletCoefficients>& per_channel) {
  if (per_channel.empty()) fail(Errc::missing_channel, "no channels");
  const std::size_t levels = per_channel[0].levels();
  FeatureVector fv;
  fv.method = FeatureMethod::dwt;
  fv.channels = per_channel.size();
  fv.groups = levels;
  for (const auto& c : per_channel) {
    if (c.levels() != levels) fail(Errc::dimension_mismatch, "channels decomposed to different depths");
    for (std::size_t l = 0; l < levels; ++l) {
      std::vector<double> power;
      power.reserve(c.details[l].size());
      double peak = 0.0;
      for (double d : c.details[l]) {
        power.push_back(d * d);
        peak = std::max(peak, std::abs(d));
      }
      detail::push_stats(fv.values, power, peak);
    }
  }
  fv.validate();
  return fv;
}

// Hilbert envelopes of the first K IMFs as groups; absent IMFs contribute a
// zero block so the length is input-independent.
inline FeatureVector assemble_hht_features(const std::vector<ImfSet>& per_channel,
                                           double sample_rate_hz, std::size_t imf_count) {
  if (per_channel.empty()) fail(Errc::missing_channel, "no channels");
  FeatureVector fv;
  fv.method = FeatureMethod::hht;
  fv.channels = per_channel.size();
  fv.groups = imf_count;
  for (const auto& set : per_channel) {
    for (std::size_t k = 0; k < imf_count; ++k) {
      if (k >= set.imfs.size()) {
        fv.values.insert(fv.values.end(), kStatsPerGroup, 0.0);
        continue;
      }
      const AnalyticSignal a = hilbert_analyze(set.imfs[k], sample_rate_hz);
      std::vector<double> power;
      power.reserve(a.amplitude.size());
      double peak = 0.0;
      for (double v : a.amplitude) {
        power.push_back(v * v);
        peak = std::max(peak, v);
      }
      detail::push_stats(fv.values, power, peak);
    }
  }
  fv.validate();
  return fv;
}

// Full per-epoch feature vector for one extraction method.
inline FeatureVector epoch_features(const Epoch& epoch, FeatureMethod method,
                                    const FeatureConfig& cfg, double sample_rate_hz) {
  if (epoch.samples.empty()) fail(Errc::missing_channel, "epoch has no channels");
  switch (method) {
    case FeatureMethod::stft: {
      std::vector<Spectrogram> specs;
      specs.reserve(epoch.samples.size());
      for (const auto& ch : epoch.samples)
        specs.push_back(stft(ch, cfg.stft_window, cfg.stft_hop, cfg.stft_window_fn, sample_rate_hz));
      return assemble_stft_features(specs, cfg.band_table);
    }
    case FeatureMethod::dwt: {
      std::vector<WaveletCoefficients> coeffs;
      coeffs.reserve(epoch.samples.size());
      for (const auto& ch : epoch.samples) coeffs.push_back(dwt(ch, cfg.dwt_wavelet, cfg.dwt_levels));
      return assemble_dwt_features(coeffs);
    }
    case FeatureMethod::hht: {
      std::vector<ImfSet> sets;
      sets.reserve(epoch.samples.size());
      for (const auto& ch : epoch.samples) sets.push_back(emd(ch, cfg.emd));
      return assemble_hht_features(sets, sample_rate_hz, cfg.hht_imf_count);
    }
  }
  fail(Errc::parse_error, "unreachable feature method");
}

}  // namespace amrp
