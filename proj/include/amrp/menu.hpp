#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "amrp/food.hpp"

namespace amrp {

struct MealBudget {
  MealSlot slot = MealSlot::breakfast;
  double min_kcal = 0.0;
  double max_kcal = 0.0;
};

struct DayBudget {
  std::array<MealBudget, kMealSlotCount> meals;
  double total_min_kcal = 1500.0;
  double total_max_kcal = 2000.0;

  const MealBudget& at(MealSlot s) const { return meals[static_cast<std::size_t>(s)]; }

  void validate() const {
    double min_sum = 0.0;
    for (const auto& m : meals) {
      if (!(0.0 <= m.min_kcal && m.min_kcal <= m.max_kcal))
        fail(Errc::config_error, std::string(slot_name(m.slot)) + ": need 0 <= min <= max");
      min_sum += m.min_kcal;
    }
    if (min_sum > total_max_kcal || total_min_kcal > total_max_kcal)
      fail(Errc::config_error, "day budget is self-contradictory");
  }
};

inline DayBudget default_day_budget() {
  DayBudget b;
  b.meals = {MealBudget{MealSlot::breakfast, 300.0, 400.0}, MealBudget{MealSlot::lunch, 500.0, 700.0},
             MealBudget{MealSlot::dinner, 500.0, 700.0}, MealBudget{MealSlot::snacks, 0.0, 200.0}};
  return b;
}

struct MealPlan {
  std::array<std::vector<FoodItem>, kMealSlotCount> slots;
  double objective = 0.0;  // sum of preference scores of chosen foods

  double slot_kcal(MealSlot s) const {
    double sum = 0.0;
    for (const auto& f : slots[static_cast<std::size_t>(s)]) sum += f.calories;
    return sum;
  }
  double day_kcal() const {
    double sum = 0.0;
    for (std::size_t s = 0; s < kMealSlotCount; ++s) sum += slot_kcal(static_cast<MealSlot>(s));
    return sum;
  }
};

struct PlanReport {
  std::array<double, kMealSlotCount> slot_kcal{};
  double day_kcal = 0.0;
  std::vector<std::string> violations;

  bool valid() const { return violations.empty(); }
};

// Lists every violated constraint: slot windows, day window, duplicate foods,
// slot eligibility. An empty report means the plan is feasible.
inline PlanReport validate_plan(const MealPlan& plan, const DayBudget& budget) {
  PlanReport rep;
  std::set<int> seen;
  for (std::size_t s = 0; s < kMealSlotCount; ++s) {
    const MealSlot slot = static_cast<MealSlot>(s);
    rep.slot_kcal[s] = plan.slot_kcal(slot);
    const auto& window = budget.at(slot);
    if (rep.slot_kcal[s] < window.min_kcal)
      rep.violations.push_back(std::string(slot_name(slot)) + " subtotal " +
                               std::to_string(rep.slot_kcal[s]) + " < " +
                               std::to_string(window.min_kcal));
    if (rep.slot_kcal[s] > window.max_kcal)
      rep.violations.push_back(std::string(slot_name(slot)) + " subtotal " +
                               std::to_string(rep.slot_kcal[s]) + " > " +
                               std::to_string(window.max_kcal));
    for (const auto& f : plan.slots[s]) {
      if (!f.allows(slot))
        rep.violations.push_back(f.name + " is not eligible for " + slot_name(slot));
      if (!seen.insert(f.id).second)
        rep.violations.push_back(f.name + " appears more than once in the plan");
    }
  }
  rep.day_kcal = plan.day_kcal();
  if (rep.day_kcal < budget.total_min_kcal)
    rep.violations.push_back("day total " + std::to_string(rep.day_kcal) + " < " +
                             std::to_string(budget.total_min_kcal));
  if (rep.day_kcal > budget.total_max_kcal)
    rep.violations.push_back("day total " + std::to_string(rep.day_kcal) + " > " +
                             std::to_string(budget.total_max_kcal));
  return rep;
}

namespace detail {

struct ExactPlanState {
  const std::vector<FoodItem>* foods = nullptr;
  const std::vector<double>* scores = nullptr;
  const DayBudget* budget = nullptr;
  const std::vector<std::size_t>* order = nullptr;  // descending score
  std::vector<double> suffix_score;                 // score mass still reachable
  std::array<double, kMealSlotCount> load{};
  double day = 0.0;
  double obj = 0.0;
  std::vector<int> choice;  // per order position: slot index or -1
  std::vector<int> best_choice;
  double best_obj = -1.0;
  bool found = false;
};

inline void exact_plan_rec(ExactPlanState& st, std::size_t pos) {
  if (st.found && st.obj + st.suffix_score[pos] <= st.best_obj) return;
  if (pos == st.order->size()) {
    for (std::size_t s = 0; s < kMealSlotCount; ++s)
      if (st.load[s] < st.budget->at(static_cast<MealSlot>(s)).min_kcal) return;
    if (st.day < st.budget->total_min_kcal) return;
    if (!st.found || st.obj > st.best_obj) {
      st.found = true;
      st.best_obj = st.obj;
      st.best_choice = st.choice;
    }
    return;
  }
  const std::size_t idx = (*st.order)[pos];
  const FoodItem& f = (*st.foods)[idx];
  for (std::size_t s = 0; s < kMealSlotCount; ++s) {
    const MealSlot slot = static_cast<MealSlot>(s);
    if (!f.allows(slot)) continue;
    if (st.load[s] + f.calories > st.budget->at(slot).max_kcal) continue;
    if (st.day + f.calories > st.budget->total_max_kcal) continue;
    st.load[s] += f.calories;
    st.day += f.calories;
    st.obj += (*st.scores)[idx];
    st.choice[pos] = static_cast<int>(s);
    exact_plan_rec(st, pos + 1);
    st.load[s] -= f.calories;
    st.day -= f.calories;
    st.obj -= (*st.scores)[idx];
  }
  st.choice[pos] = -1;
  exact_plan_rec(st, pos + 1);
}

}  // namespace detail

// Preference-greedy packing into the four calorie-windowed meal bins:
// foods in descending score go to the feasible eligible slot with the most
// remaining capacity; a repair pass then fills slot and day minima with the
// lowest-score leftovers. The greedy can strand minima that a different
// assignment would meet, so when it comes up infeasible on a desk-scale
// instance an exact branch-and-bound over slot assignments decides. Throws
// InfeasiblePlan with a per-slot diagnosis.
inline MealPlan plan_menu(const std::vector<FoodItem>& foods, const std::vector<double>& scores,
                          const DayBudget& budget, std::size_t exact_fallback_limit = 20) {
  if (foods.size() != scores.size())
    fail(Errc::dimension_mismatch, "one preference score per food required");
  budget.validate();
  for (const auto& f : foods) f.validate();

  std::vector<std::size_t> order(foods.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return foods[a].id < foods[b].id;
  });

  MealPlan plan;
  std::array<double, kMealSlotCount> load{};
  double day = 0.0;
  std::vector<bool> placed(foods.size(), false);

  auto try_place = [&](std::size_t idx) {
    const FoodItem& f = foods[idx];
    int best_slot = -1;
    double best_room = -1.0;
    for (std::size_t s = 0; s < kMealSlotCount; ++s) {
      const MealSlot slot = static_cast<MealSlot>(s);
      if (!f.allows(slot)) continue;
      if (load[s] + f.calories > budget.at(slot).max_kcal) continue;
      if (day + f.calories > budget.total_max_kcal) continue;
      const double room = budget.at(slot).max_kcal - load[s];
      if (room > best_room) {
        best_room = room;
        best_slot = static_cast<int>(s);
      }
    }
    if (best_slot < 0) return false;
    plan.slots[static_cast<std::size_t>(best_slot)].push_back(f);
    load[static_cast<std::size_t>(best_slot)] += f.calories;
    day += f.calories;
    plan.objective += scores[idx];
    placed[idx] = true;
    return true;
  };

  for (std::size_t idx : order) try_place(idx);

  // repair: reach every slot minimum with the cheapest leftover preferences
  std::vector<std::size_t> ascending(order.rbegin(), order.rend());
  for (std::size_t s = 0; s < kMealSlotCount; ++s) {
    const MealSlot slot = static_cast<MealSlot>(s);
    for (std::size_t idx : ascending) {
      if (load[s] >= budget.at(slot).min_kcal) break;
      const FoodItem& f = foods[idx];
      if (placed[idx] || !f.allows(slot)) continue;
      if (load[s] + f.calories > budget.at(slot).max_kcal) continue;
      if (day + f.calories > budget.total_max_kcal) continue;
      plan.slots[s].push_back(f);
      load[s] += f.calories;
      day += f.calories;
      plan.objective += scores[idx];
      placed[idx] = true;
    }
  }
  // repair: reach the day minimum anywhere there is room
  for (std::size_t idx : ascending) {
    if (day >= budget.total_min_kcal) break;
    if (!placed[idx]) try_place(idx);
  }

  const PlanReport rep = validate_plan(plan, budget);
  if (rep.valid()) return plan;

  if (foods.size() <= exact_fallback_limit) {
    detail::ExactPlanState st;
    st.foods = &foods;
    st.scores = &scores;
    st.budget = &budget;
    st.order = &order;
    st.suffix_score.assign(order.size() + 1, 0.0);
    for (std::size_t p = order.size(); p-- > 0;)
      st.suffix_score[p] = st.suffix_score[p + 1] + scores[order[p]];
    st.choice.assign(order.size(), -1);
    detail::exact_plan_rec(st, 0);
    if (st.found) {
      MealPlan exact;
      exact.objective = st.best_obj;
      for (std::size_t p = 0; p < order.size(); ++p) {
        if (st.best_choice[p] < 0) continue;
        exact.slots[static_cast<std::size_t>(st.best_choice[p])].push_back(foods[order[p]]);
      }
      return exact;
    }
  }

  std::string diagnosis = "no feasible plan after repair:";
  for (const auto& v : rep.violations) diagnosis += " [" + v + "]";
  fail(Errc::infeasible_plan, diagnosis);
}

}  // namespace amrp
