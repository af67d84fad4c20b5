#pragma once

#include <map>
#include <string>
#include <vector>

#include "amrp/filters.hpp"

namespace amrp {

struct BandSpec {
  std::string name;
  double lo_hz = 0.0;
  double hi_hz = 0.0;
};

// canonical five-band decomposition table
inline std::vector<BandSpec> default_band_table() {
  return {{"Delta", 0.3, 4.0},
          {"Theta", 4.0, 8.0},
          {"Alpha", 8.0, 12.0},
          {"Beta", 12.0, 25.0},
          {"Gamma", 25.0, 45.0}};
}

inline std::size_t band_index(const std::vector<BandSpec>& table, const std::string& name) {
  for (std::size_t i = 0; i < table.size(); ++i)
    if (table[i].name == name) return i;
  fail(Errc::parse_error, "unknown band: " + name);
}

struct BandSet {
  std::vector<BandSpec> table;
  std::vector<Signal> components;  // aligned with table
};

// One zero-phase band-pass per table entry, all same length as the input.
inline BandSet decompose_bands(const Signal& signal, const std::vector<BandSpec>& table,
                               double sample_rate_hz, std::size_t order = 4) {
  BandSet out;
  out.table = table;
  out.components.reserve(table.size());
  for (const auto& band : table) {
    if (!(band.lo_hz >= 0.0 && band.lo_hz < band.hi_hz && band.hi_hz <= sample_rate_hz / 2.0))
      fail(Errc::invalid_band_edges, band.name);
    out.components.push_back(bandpass_filter(signal, band.lo_hz, band.hi_hz, order, sample_rate_hz));
  }
  return out;
}

}  // namespace amrp
