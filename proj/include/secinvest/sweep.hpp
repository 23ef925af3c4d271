#pragma once

// Budget sweeps comparing the three allocation methods on one scenario.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "secinvest/fullgame.hpp"
#include "secinvest/knapsack.hpp"
#include "secinvest/model.hpp"
#include "secinvest/subgame.hpp"

namespace secinvest {

enum class Method { FullGame, PureKnapsack, Hybrid };

// CLI spellings: "fullgame", "knapsack", "hybrid".
std::string_view to_string(Method m);
Method method_from_string(std::string_view s);

struct SweepPoint {
  double budget = 0;
  Method method = Method::PureKnapsack;
  double weakest_damage = 0;
  double total_direct_cost = 0;    // expected cost for mixed solutions
  double total_indirect_cost = 0;
  std::vector<int> choices;        // level tuple or plan caps; empty for FullGame
  std::size_t support_size = 1;    // FullGame schedules with positive weight
};

// Solvers shared across budgets. Sub-game plans are computed once.
class MethodRunner {
 public:
  explicit MethodRunner(const Scenario& s);

  const Scenario& scenario() const { return s_; }
  const std::vector<std::vector<Plan>>& plans() const;
  const ItemGroups& pure_groups() const { return pure_; }
  const ItemGroups& hybrid_groups() const;

  Solution knapsack(double budget, KnapsackMode mode) const;
  FullGameResult full_game(double budget) const { return solve_full_game(s_, budget); }

  SweepPoint point(double budget, Method method) const;

 private:
  const Scenario& s_;
  ItemGroups pure_;
  mutable std::optional<std::vector<std::vector<Plan>>> plans_;
  mutable std::optional<ItemGroups> hybrid_;
};

// One point per (budget, method), budget-major in the given method order.
// Budgets must be ascending; duplicate methods are rejected.
std::vector<SweepPoint> budget_sweep(const Scenario& s, const std::vector<double>& budgets,
                                     const std::vector<Method>& methods);

// Inclusive range a, a+step, ... <= b (with a small slack for rounding).
std::vector<double> budget_range(double a, double b, double step);

}  // namespace secinvest
