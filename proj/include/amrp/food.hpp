#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "amrp/csv.hpp"

namespace amrp {

enum class MealSlot { breakfast = 0, lunch = 1, dinner = 2, snacks = 3 };

constexpr std::size_t kMealSlotCount = 4;

inline const char* slot_name(MealSlot s) {
  switch (s) {
    case MealSlot::breakfast: return "breakfast";
    case MealSlot::lunch: return "lunch";
    case MealSlot::dinner: return "dinner";
    case MealSlot::snacks: return "snacks";
  }
  return "?";
}

inline MealSlot slot_from_name(const std::string& name) {
  for (std::size_t i = 0; i < kMealSlotCount; ++i)
    if (name == slot_name(static_cast<MealSlot>(i))) return static_cast<MealSlot>(i);
  fail(Errc::parse_error, "unknown meal slot: " + name);
}

struct FoodItem {
  int id = 0;
  std::string name;
  double calories = 0.0;  // kcal per standard plate
  std::vector<MealSlot> allowed_slots;
  std::map<std::string, double> nutrients;  // grams, e.g. protein/carb/fat

  bool allows(MealSlot s) const {
    for (MealSlot a : allowed_slots)
      if (a == s) return true;
    return false;
  }

  void validate() const {
    if (calories <= 0) fail(Errc::non_positive_calories, name + ": " + std::to_string(calories));
    if (allowed_slots.empty()) fail(Errc::empty_slots, name + " has no allowed meal slots");
  }
};

struct FoodDatabase {
  std::vector<FoodItem> items;

  const FoodItem& by_id(int id) const {
    for (const auto& f : items)
      if (f.id == id) return f;
    fail(Errc::parse_error, "no food with id " + std::to_string(id));
  }
};

inline FoodDatabase parse_food_db(const nlohmann::json& j) {
  if (!j.is_array()) fail(Errc::parse_error, "food database must be a JSON array");
  FoodDatabase db;
  std::set<int> ids;
  for (const auto& e : j) {
    FoodItem f;
    f.id = e.at("id").get<int>();
    f.name = e.at("name").get<std::string>();
    f.calories = e.at("calories").get<double>();
    for (const auto& s : e.at("slots")) f.allowed_slots.push_back(slot_from_name(s.get<std::string>()));
    if (e.contains("nutrients"))
      for (const auto& [k, v] : e.at("nutrients").items()) f.nutrients[k] = v.get<double>();
    f.validate();
    if (!ids.insert(f.id).second) fail(Errc::duplicate_id, "food id " + std::to_string(f.id));
    db.items.push_back(std::move(f));
  }
  return db;
}

inline FoodDatabase load_food_db(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::parse_error, std::string("food database: ") + e.what());
  }
  try {
    return parse_food_db(j);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::parse_error, std::string("food database: ") + e.what());
  }
}

}  // namespace amrp
