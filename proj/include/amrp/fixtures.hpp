#pragma once

// Bundled regression fixtures: published confusion tables with their printed
// F1 scores, the worked TOPSIS example, and the reference day-menu. Used by
// the `fixtures` subcommand and the regression tests.

#include <string>
#include <vector>

#include "amrp/food.hpp"
#include "amrp/metrics.hpp"
#include "amrp/topsis.hpp"

namespace amrp {

struct ConfusionFixture {
  std::string name;  // target/channels/method
  // printed counts; rows are actual classes in listed order, columns predicted
  long a11, a12, a21, a22;
  double printed_f1;
  // class orientation under which the printed F1 reproduces: true when the
  // first-listed class is positive, false when the second-listed one is
  bool positive_is_first;
  double tolerance;

  ConfusionMatrix matrix() const {
    ConfusionMatrix cm;
    if (positive_is_first) {
      cm.tp = a11;
      cm.fn = a12;
      cm.fp = a21;
      cm.tn = a22;
      cm.positive_class = 0;
    } else {
      cm.tp = a22;
      cm.fn = a21;
      cm.fp = a12;
      cm.tn = a11;
      cm.positive_class = 1;
    }
    return cm;
  }
};

inline std::vector<ConfusionFixture> reference_confusion_fixtures() {
  // Like and Excitement rows reproduce with the first-listed class positive;
  // the Feelings voting rows only reproduce with the second-listed class
  // (pleasant = 1) positive.
  // One row is omitted: the frontal/excitement dwt row repeats the stft
  // counts and its printed F1 (0.7355) matches neither orientation of them.
  return {
      {"like/all/dwt", 214, 13, 47, 165, 0.877, true, 0.0005},
      {"like/all/stft", 112, 115, 113, 99, 0.4955, true, 0.001},
      {"like/all/hht", 213, 14, 57, 155, 0.8571, true, 0.0005},
      {"excitement/all/dwt", 150, 39, 76, 120, 0.7228, true, 0.001},
      {"excitement/all/stft", 117, 72, 110, 86, 0.5625, true, 0.001},
      {"excitement/all/hht", 155, 34, 68, 128, 0.7524, true, 0.001},
      {"feelings/all/dwt", 198, 28, 40, 182, 0.8425, false, 0.001},
      {"feelings/all/stft", 115, 111, 141, 81, 0.3913, false, 0.001},
      {"feelings/all/hht", 206, 20, 73, 149, 0.7621, false, 0.001},
      {"like/frontal/dwt", 236, 22, 91, 165, 0.8068, true, 0.001},
      {"like/frontal/stft", 188, 70, 183, 73, 0.5977, true, 0.001},
      {"like/frontal/hht", 233, 25, 91, 165, 0.80, true, 0.001},
      {"excitement/frontal/stft", 152, 68, 171, 57, 0.5598, true, 0.001},
      {"excitement/frontal/hht", 188, 32, 114, 114, 0.7203, true, 0.001},
      {"feelings/frontal/dwt", 250, 12, 80, 191, 0.8059, false, 0.001},
      {"feelings/frontal/stft", 211, 51, 204, 67, 0.3444, false, 0.001},
      {"feelings/frontal/hht", 236, 26, 55, 216, 0.8421, false, 0.001},
      {"like/hierarchical/all", 212, 15, 55, 157, 0.8582, true, 0.001},
      {"like/hierarchical/frontal", 237, 21, 108, 148, 0.7860, true, 0.001},
      {"excitement/hierarchical/all", 153, 36, 79, 117, 0.7268, true, 0.001},
      {"excitement/hierarchical/frontal", 192, 28, 130, 98, 0.7084, true, 0.001},
      {"feelings/hierarchical/all", 212, 15, 55, 157, 0.8582, true, 0.001},
      {"feelings/hierarchical/frontal", 248, 14, 83, 188, 0.7949, false, 0.001},
  };
}

// A 40x3 decision matrix consistent with the worked ranking example: column
// norms sqrt(136), sqrt(130), sqrt(31); first row (2,2,1); second row (1,1,0).
inline DecisionMatrix reference_decision_matrix() {
  DecisionMatrix dm;
  dm.x.assign(40, std::vector<double>(3, 0.0));
  for (std::size_t i = 0; i < 40; ++i) {
    dm.x[i][0] = (i >= 1 && i <= 8) ? 1.0 : 2.0;    // 32 twos, 8 ones
    dm.x[i][1] = (i >= 1 && i <= 10) ? 1.0 : 2.0;   // 30 twos, 10 ones
    dm.x[i][2] = (i >= 1 && i <= 9) ? 0.0 : 1.0;    // 31 ones, 9 zeros
  }
  return dm;
}

struct WorkedExampleExpectations {
  std::vector<double> column_norms = {11.6619, 11.401, 5.567};
  std::vector<double> normalized_first_row = {0.1714, 0.1754, 0.1796};
  std::vector<double> weighted_first_row = {0.06859, 0.05262, 0.05388};
  std::vector<double> ideal_best = {0.06859, 0.05262, 0.05388};
  std::vector<double> ideal_worst = {0.03429, 0.02631, 0.0};
  double sep_worst_first_row = 0.0690;
  double closeness_first_row = 1.0;
  std::vector<double> weights = {0.4, 0.3, 0.3};
  double tolerance = 1e-3;
};

// The nine menu items of the reference day plans, printed calorie values.
// Slot eligibility is part of this database, not of the published tables.
inline std::vector<FoodItem> reference_menu_foods() {
  using S = MealSlot;
  auto food = [](int id, const char* name, double kcal, std::vector<S> slots) {
    FoodItem f;
    f.id = id;
    f.name = name;
    f.calories = kcal;
    f.allowed_slots = std::move(slots);
    return f;
  };
  return {
      food(0, "Bread and Butter", 189.0, {S::breakfast}),
      food(1, "Omelete", 154.0, {S::breakfast}),
      food(2, "Polao Roast", 450.0, {S::lunch, S::dinner}),
      food(3, "Kabab", 691.0, {S::lunch, S::dinner}),
      food(4, "Ramen", 192.3, {S::snacks, S::dinner}),
      food(5, "Roti vegetable", 388.0, {S::breakfast}),
      food(6, "Rice with chicken and vegetable", 450.0, {S::lunch, S::dinner}),
      food(7, "Kacchi Biriyani", 350.0, {S::lunch, S::dinner}),
      food(8, "Chicken Shwarma", 192.0, {S::snacks, S::dinner}),
  };
}

// preference scores used by the menu regression (descending by palatability
// in the reference ranking; exact values are fixture data, not outputs)
inline std::vector<double> reference_menu_scores() {
  return {0.60, 0.55, 0.90, 0.95, 0.75, 0.65, 0.85, 0.80, 0.70};
}

// the reference full-day plan: food ids per slot, with the printed subtotals
struct ReferenceDayPlan {
  std::vector<int> breakfast = {0, 1};  // 189 + 154 = 343
  std::vector<int> lunch = {2};         // 450
  std::vector<int> dinner = {3};        // 691
  std::vector<int> snacks = {4};        // 192.3
  double breakfast_kcal = 343.0;
  double lunch_kcal = 450.0;
  double dinner_kcal = 691.0;
  double snacks_kcal = 192.3;
  double day_kcal = 1676.3;
};

}  // namespace amrp
