#pragma once

// Exact 0-1 multiple-choice multi-objective knapsack: choose one item per
// control within a budget so that the damage at the weakest target is as
// small as possible.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "secinvest/model.hpp"
#include "secinvest/subgame.hpp"

namespace secinvest {

enum class KnapsackMode {
  Pure,    // objective adds the summed indirect cost of the chosen levels
  Hybrid,  // indirect cost already priced inside each sub-game plan
};

struct Item {
  int control_id = 0;
  int choice = 0;  // level (Pure) or level cap (Hybrid)
  double direct_cost = 0;
  std::vector<double> mitigation;  // per target
  double indirect_cost = 0;        // 0 for Hybrid items
};

using ItemGroups = std::vector<std::vector<Item>>;

struct Solution {
  std::vector<Item> chosen;  // one per control, in group order
  double worst_target_damage = 0;
  double total_direct_cost = 0;
  double total_indirect_cost = 0;
  double objective = 0;

  std::vector<int> choices() const;
  bool operator==(const Solution& o) const;
};

inline constexpr double kObjectiveTieTolerance = 1e-9;
inline constexpr double kCostTieTolerance = 1e-9;

// Pure items: one per level of every control.
ItemGroups pure_items(const Scenario& s);
// Hybrid items: one per sub-game plan.
ItemGroups hybrid_items(const Scenario& s, std::span<const std::vector<Plan>> plans);

// Evaluates a complete choice (one item per group).
Solution evaluate_choice(const Scenario& s, const ItemGroups& groups, std::span<const int> pick,
                         KnapsackMode mode);

// Branch and bound over the groups with per-target damage lower bounds. All
// solutions within kObjectiveTieTolerance of the optimum are retained and
// resolved by `tiebreak`, so the answer is exact and deterministic.
Solution solve_mcmo(const ItemGroups& groups, const Scenario& s, double budget, KnapsackMode mode);

// Lowest total direct cost wins (within kCostTieTolerance); remaining ties go
// to the lexicographically smallest choice vector.
Solution tiebreak(std::span<const Solution> candidates);

std::string_view to_string(KnapsackMode m);

}  // namespace secinvest
