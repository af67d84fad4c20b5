#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "amrp/binpack.hpp"
#include "amrp/fixtures.hpp"
#include "amrp/menu.hpp"
#include "amrp/rng.hpp"

using namespace amrp;

namespace {

// exhaustive minimum-bin search: assign each item to an existing or new bin
void brute_bins(const std::vector<double>& w, double cap, std::size_t item,
                std::vector<double>& load, std::size_t& best) {
  if (load.size() >= best) return;
  if (item == w.size()) {
    best = std::min(best, load.size());
    return;
  }
  for (std::size_t b = 0; b < load.size(); ++b) {
    if (load[b] + w[item] > cap + 1e-12) continue;
    load[b] += w[item];
    brute_bins(w, cap, item + 1, load, best);
    load[b] -= w[item];
  }
  load.push_back(w[item]);
  brute_bins(w, cap, item + 1, load, best);
  load.pop_back();
}

std::size_t brute_force_bins(const std::vector<double>& w, double cap) {
  std::vector<double> load;
  std::size_t best = w.size() + 1;
  brute_bins(w, cap, 0, load, best);
  return best;
}

}  // namespace

TEST_CASE("pack_min_bins handles the hand-checked instances", "[planner]") {
  PackingInstance pairs;
  pairs.weights = {0.5, 0.5, 0.5, 0.5};
  CHECK(pack_min_bins(pairs).bin_count == 2);

  PackingInstance triple;
  triple.weights = {0.4, 0.4, 0.4};
  const auto res = pack_min_bins(triple);
  CHECK(res.bin_count == 2);
  CHECK(res.bin_count == brute_force_bins(triple.weights, 1.0));

  PackingInstance empty;
  CHECK(pack_min_bins(empty).bin_count == 0);

  PackingInstance heavy;
  heavy.weights = {1.5};
  try {
    pack_min_bins(heavy);
    FAIL("expected ItemExceedsCapacity");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::item_exceeds_capacity);
  }
}

TEST_CASE("packing assignments respect capacity and cover every item", "[planner]") {
  Rng rng(5);
  for (int rep = 0; rep < 50; ++rep) {
    PackingInstance inst;
    const std::size_t n = 1 + rng.below(12);
    for (std::size_t i = 0; i < n; ++i) inst.weights.push_back(rng.uniform(0.05, 1.0));
    const auto res = pack_min_bins(inst);
    REQUIRE(res.assignment.size() == n);
    std::map<std::size_t, double> loads;
    for (std::size_t i = 0; i < n; ++i) loads[res.assignment[i]] += inst.weights[i];
    CHECK(loads.size() == res.bin_count);
    for (const auto& [bin, load] : loads) CHECK(load <= 1.0 + 1e-9);
  }
}

TEST_CASE("exact packer matches brute force; FFD stays in its bound", "[planner]") {
  Rng rng(11);
  for (int rep = 0; rep < 500; ++rep) {
    PackingInstance inst;
    const std::size_t n = 2 + rng.below(9);  // n <= 10
    for (std::size_t i = 0; i < n; ++i) inst.weights.push_back(rng.uniform(0.05, 1.0));

    const auto exact = pack_min_bins(inst);
    REQUIRE(exact.exact);
    const std::size_t opt = brute_force_bins(inst.weights, 1.0);
    REQUIRE(exact.bin_count == opt);

    const auto ffd = pack_first_fit_decreasing(inst);
    CHECK(static_cast<double>(ffd.bin_count) <=
          (11.0 / 9.0) * static_cast<double>(opt) + 1.0 + 1e-9);
  }
}

TEST_CASE("the reference menu items admit a valid default-budget plan", "[planner]") {
  const auto foods = reference_menu_foods();
  const auto scores = reference_menu_scores();
  const auto plan = plan_menu(foods, scores, default_day_budget());
  const auto rep = validate_plan(plan, default_day_budget());
  CHECK(rep.valid());
  CHECK(plan.day_kcal() >= 1500.0);
  CHECK(plan.day_kcal() <= 2000.0);
}

TEST_CASE("validate_plan confirms the reference day totals", "[planner]") {
  const auto foods = reference_menu_foods();
  const ReferenceDayPlan ref;
  MealPlan plan;
  auto add = [&](MealSlot s, const std::vector<int>& ids) {
    for (int id : ids)
      for (const auto& f : foods)
        if (f.id == id) plan.slots[static_cast<std::size_t>(s)].push_back(f);
  };
  add(MealSlot::breakfast, ref.breakfast);
  add(MealSlot::lunch, ref.lunch);
  add(MealSlot::dinner, ref.dinner);
  add(MealSlot::snacks, ref.snacks);

  const auto defaults = default_day_budget();
  const auto rep = validate_plan(plan, defaults);
  CHECK(rep.slot_kcal[0] == ref.breakfast_kcal);
  CHECK(rep.slot_kcal[1] == ref.lunch_kcal);
  CHECK(rep.slot_kcal[2] == ref.dinner_kcal);
  CHECK(rep.slot_kcal[3] == ref.snacks_kcal);
  CHECK(std::abs(rep.day_kcal - ref.day_kcal) < 1e-9);

  // the named windows hold under the defaults
  CHECK(rep.slot_kcal[0] >= defaults.at(MealSlot::breakfast).min_kcal);
  CHECK(rep.slot_kcal[0] <= defaults.at(MealSlot::breakfast).max_kcal);
  CHECK(rep.slot_kcal[3] <= defaults.at(MealSlot::snacks).max_kcal);
  CHECK(rep.day_kcal >= defaults.total_min_kcal);
  CHECK(rep.day_kcal <= defaults.total_max_kcal);

  // the published lunch sits below the default 500 kcal floor; under a budget
  // whose lunch window admits it, the plan is fully valid
  DayBudget relaxed = defaults;
  relaxed.meals[static_cast<std::size_t>(MealSlot::lunch)].min_kcal = 400.0;
  CHECK(validate_plan(plan, relaxed).valid());
  // and under the strict defaults that floor is the single violation
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].find("lunch") != std::string::npos);
}

TEST_CASE("validate_plan flags window, duplicate and eligibility faults", "[planner]") {
  const auto foods = reference_menu_foods();
  MealPlan plan;
  FoodItem big;
  big.id = 99;
  big.name = "double kabab";
  big.calories = 801.0;
  big.allowed_slots = {MealSlot::lunch};
  plan.slots[static_cast<std::size_t>(MealSlot::lunch)].push_back(big);

  auto rep = validate_plan(plan, default_day_budget());
  bool lunch_over = false;
  for (const auto& v : rep.violations)
    if (v.find("lunch") != std::string::npos && v.find(">") != std::string::npos) lunch_over = true;
  CHECK(lunch_over);

  MealPlan dup;
  dup.slots[static_cast<std::size_t>(MealSlot::lunch)].push_back(foods[2]);
  dup.slots[static_cast<std::size_t>(MealSlot::dinner)].push_back(foods[2]);
  rep = validate_plan(dup, default_day_budget());
  bool dup_found = false;
  for (const auto& v : rep.violations)
    if (v.find("more than once") != std::string::npos) dup_found = true;
  CHECK(dup_found);

  MealPlan wrong_slot;
  wrong_slot.slots[static_cast<std::size_t>(MealSlot::snacks)].push_back(foods[3]);  // kabab
  rep = validate_plan(wrong_slot, default_day_budget());
  bool elig = false;
  for (const auto& v : rep.violations)
    if (v.find("not eligible") != std::string::npos) elig = true;
  CHECK(elig);
}

TEST_CASE("plan_menu fails loudly on an empty food list", "[planner]") {
  try {
    plan_menu({}, {}, default_day_budget());
    FAIL("expected InfeasiblePlan");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::infeasible_plan);
    CHECK(std::string(e.what()).find("breakfast") != std::string::npos);
  }
}

namespace {

struct OracleResult {
  bool feasible = false;
  double best_objective = 0.0;
};

// exhaustive search over every slot assignment (including "skip")
void oracle_rec(const std::vector<FoodItem>& foods, const std::vector<double>& scores,
                const DayBudget& budget, std::size_t idx, std::array<double, 4>& load, double day,
                double obj, OracleResult& out) {
  if (idx == foods.size()) {
    for (std::size_t s = 0; s < 4; ++s) {
      const auto& w = budget.at(static_cast<MealSlot>(s));
      if (load[s] < w.min_kcal || load[s] > w.max_kcal) return;
    }
    if (day < budget.total_min_kcal || day > budget.total_max_kcal) return;
    if (!out.feasible || obj > out.best_objective) {
      out.feasible = true;
      out.best_objective = obj;
    }
    return;
  }
  oracle_rec(foods, scores, budget, idx + 1, load, day, obj, out);  // skip
  for (MealSlot s : foods[idx].allowed_slots) {
    const std::size_t si = static_cast<std::size_t>(s);
    if (load[si] + foods[idx].calories > budget.at(s).max_kcal) continue;
    if (day + foods[idx].calories > budget.total_max_kcal) continue;
    load[si] += foods[idx].calories;
    oracle_rec(foods, scores, budget, idx + 1, load, day + foods[idx].calories,
               obj + scores[idx], out);
    load[si] -= foods[idx].calories;
  }
}

OracleResult plan_oracle(const std::vector<FoodItem>& foods, const std::vector<double>& scores,
                         const DayBudget& budget) {
  OracleResult out;
  std::array<double, 4> load{};
  oracle_rec(foods, scores, budget, 0, load, 0.0, 0.0, out);
  return out;
}

}  // namespace

TEST_CASE("greedy planning tracks the exhaustive oracle", "[planner]") {
  Rng rng(31);
  int feasible_seen = 0;
  for (int rep = 0; rep < 60; ++rep) {
    std::vector<FoodItem> foods;
    std::vector<double> scores;
    for (int i = 0; i < 10; ++i) {
      FoodItem f;
      f.id = i;
      f.name = "food" + std::to_string(i);
      f.calories = rng.uniform(100.0, 700.0);
      // one or two random slots; snack eligibility only for snack-size items
      const MealSlot all[4] = {MealSlot::breakfast, MealSlot::lunch, MealSlot::dinner,
                               MealSlot::snacks};
      while (f.allowed_slots.size() < 1 + rng.below(2)) {
        MealSlot s = all[rng.below(4)];
        if (s == MealSlot::snacks && f.calories > 200.0) continue;
        if (!f.allows(s)) f.allowed_slots.push_back(s);
      }
      foods.push_back(f);
      scores.push_back(rng.uniform(0.0, 1.0));
    }
    const auto oracle = plan_oracle(foods, scores, default_day_budget());

    bool greedy_ok = true;
    MealPlan plan;
    try {
      plan = plan_menu(foods, scores, default_day_budget());
    } catch (const Error&) {
      greedy_ok = false;
    }
    REQUIRE(greedy_ok == oracle.feasible);
    if (greedy_ok) {
      ++feasible_seen;
      CHECK(validate_plan(plan, default_day_budget()).valid());
      CHECK(plan.objective >= 0.8 * oracle.best_objective);
    }
  }
  CHECK(feasible_seen > 0);
}

TEST_CASE("plan_menu is deterministic", "[planner]") {
  const auto foods = reference_menu_foods();
  const auto scores = reference_menu_scores();
  const auto a = plan_menu(foods, scores, default_day_budget());
  const auto b = plan_menu(foods, scores, default_day_budget());
  REQUIRE(a.objective == b.objective);
  for (std::size_t s = 0; s < kMealSlotCount; ++s) {
    REQUIRE(a.slots[s].size() == b.slots[s].size());
    for (std::size_t i = 0; i < a.slots[s].size(); ++i)
      CHECK(a.slots[s][i].id == b.slots[s][i].id);
  }
}
