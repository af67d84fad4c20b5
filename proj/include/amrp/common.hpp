#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace amrp {

using Signal = std::vector<double>;
// channel-major: samples[ch][i]
using ChannelData = std::vector<std::vector<double>>;

enum class Errc {
  // ingestion
  missing_file,
  malformed_row,
  channel_mismatch,
  out_of_range_label,
  duplicate_food_index,
  non_positive_calories,
  empty_slots,
  duplicate_id,
  recording_too_short,
  invalid_profile,
  // preprocessing
  invalid_band_edges,
  signal_too_short,
  too_many_levels,
  epoch_longer_than_trial,
  unknown_channel,
  // features
  window_too_long,
  inconsistent_structure,
  missing_channel,
  non_finite_feature,
  // learning
  empty_class,
  dimension_mismatch,
  misaligned_rows,
  missing_method,
  // metrics
  length_mismatch,
  empty_input,
  undefined_f1,
  single_class,
  // recommendation
  zero_column,
  weight_dimension_mismatch,
  non_positive_weight,
  // planning
  item_exceeds_capacity,
  infeasible_plan,
  // orchestration
  config_error,
  parse_error,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::missing_file: return "MissingFile";
    case Errc::malformed_row: return "MalformedRow";
    case Errc::channel_mismatch: return "ChannelMismatch";
    case Errc::out_of_range_label: return "OutOfRangeLabel";
    case Errc::duplicate_food_index: return "DuplicateFoodIndex";
    case Errc::non_positive_calories: return "NonPositiveCalories";
    case Errc::empty_slots: return "EmptySlots";
    case Errc::duplicate_id: return "DuplicateId";
    case Errc::recording_too_short: return "RecordingTooShort";
    case Errc::invalid_profile: return "InvalidProfile";
    case Errc::invalid_band_edges: return "InvalidBandEdges";
    case Errc::signal_too_short: return "SignalTooShort";
    case Errc::too_many_levels: return "TooManyLevels";
    case Errc::epoch_longer_than_trial: return "EpochLongerThanTrial";
    case Errc::unknown_channel: return "UnknownChannel";
    case Errc::window_too_long: return "WindowTooLong";
    case Errc::inconsistent_structure: return "InconsistentStructure";
    case Errc::missing_channel: return "MissingChannel";
    case Errc::non_finite_feature: return "NonFiniteFeature";
    case Errc::empty_class: return "EmptyClass";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::misaligned_rows: return "MisalignedRows";
    case Errc::missing_method: return "MissingMethod";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::empty_input: return "EmptyInput";
    case Errc::undefined_f1: return "UndefinedF1";
    case Errc::single_class: return "SingleClass";
    case Errc::zero_column: return "ZeroColumn";
    case Errc::weight_dimension_mismatch: return "WeightDimensionMismatch";
    case Errc::non_positive_weight: return "NonPositiveWeight";
    case Errc::item_exceeds_capacity: return "ItemExceedsCapacity";
    case Errc::infeasible_plan: return "InfeasiblePlan";
    case Errc::config_error: return "ConfigError";
    case Errc::parse_error: return "ParseError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline bool all_finite(const Signal& x) {
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

constexpr double kPi = 3.141592653589793238462643383279502884;

}  // namespace amrp
