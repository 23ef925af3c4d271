#pragma once

// Per-control games (levels x targets) and their solutions packaged as
// cyber security plans: mixed strategies over a control's levels.

#include <cstddef>
#include <string>
#include <vector>

#include "secinvest/game.hpp"
#include "secinvest/model.hpp"

namespace secinvest {

struct Plan {
  int control_id = 0;
  int level_cap = 0;
  std::vector<double> strategy;     // over levels 0..level_cap
  double expected_direct_cost = 0;  // sum_i strategy[i] * Gamma(i)
  double expected_indirect_cost = 0;
  std::vector<double> mitigation;   // per target, sum_i strategy[i] * E(i,t)
  double guaranteed_loss = 0;       // sub-game value
  double duality_gap = 0;

  bool is_pure() const;
};

// Rows are levels 0..level_cap, columns all targets, entries S(l,t) + C(l).
LossMatrix build_control_matrix(const Scenario& s, std::size_t control, int level_cap);

// Solves the capped control game. Weakly dominated levels are removed first
// (identical levels resolve to the higher one), so a free control whose
// efficacy grows with level yields the pure top-level plan.
Plan solve_subgame(const Scenario& s, std::size_t control, int level_cap);

// One plan per cap 0..L. Cap 0 is the null plan.
std::vector<Plan> enumerate_plans(const Scenario& s, std::size_t control);

// Caps k where the expected direct cost drops below that of cap k-1.
// Such drops are legal (the sub-game may retreat from costly levels) but
// worth surfacing to the operator.
std::vector<int> cost_regressions(const std::vector<Plan>& plans);

struct AdviceLine {
  int level = 0;
  int devices = 0;
  double fraction = 0;  // devices / device_count
};

// Maps a plan's strategy onto a ranking of devices, most important first:
// the highest level in the support covers the top devices. Device counts are
// floor(p * n); leftover devices go to the highest level in the support.
std::vector<AdviceLine> render_plan_advice(const Plan& plan, int device_count);

// "level 4 on the top 3 of 10 devices (30%)" lines.
std::string format_advice(const std::vector<AdviceLine>& lines, int device_count);

}  // namespace secinvest
