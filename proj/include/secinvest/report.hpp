#pragma once

// CSV and SVG renderings of solver results. Reals use 9 significant digits.

#include <ostream>
#include <string>
#include <vector>

#include "secinvest/fullgame.hpp"
#include "secinvest/knapsack.hpp"
#include "secinvest/subgame.hpp"
#include "secinvest/sweep.hpp"

namespace secinvest {

inline constexpr const char* kSweepHeader =
    "budget,method,weakest_damage,total_direct_cost,total_indirect_cost";
inline constexpr const char* kSolutionHeader = "control_id,choice,strategy,direct_cost";
inline constexpr const char* kScheduleHeader = "package,probability";

void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& points);

// Pure knapsack: choice is the level, strategy puts mass 1 on it.
void write_solution_csv(std::ostream& out, const Scenario& s, const Solution& sol);
// Hybrid: choice is the plan's level cap, strategy its mixture over levels.
void write_solution_csv(std::ostream& out, const Scenario& s, const Solution& sol,
                        const std::vector<std::vector<Plan>>& plans);
// Full game: choice is left empty, strategy is the level marginal.
void write_solution_csv(std::ostream& out, const Scenario& s, const FullGameResult& r);

void write_schedule_csv(std::ostream& out, const FullGameResult& r);

// Line chart, one series per method, x = budget, y = weakest damage.
std::string sweep_svg(const std::vector<SweepPoint>& points, const std::string& title);

// "0;0.5;0.5" rendering of a probability vector.
std::string join_probabilities(const std::vector<double>& p);

}  // namespace secinvest
