#pragma once

// Full Game representation: every within-budget tuple of control levels (a
// "schedule") is a defender pure strategy in one large zero-sum game against
// all targets.

#include <cstddef>
#include <string>
#include <vector>

#include "secinvest/game.hpp"
#include "secinvest/model.hpp"

namespace secinvest {

inline constexpr std::size_t kScheduleWarnCount = 200'000;
// Enumeration itself refuses to materialize more tuples than this.
inline constexpr std::size_t kScheduleHardCap = 5'000'000;

struct Schedule {
  std::vector<int> levels;  // one level per control, in scenario order
  double direct_cost = 0;
  double indirect_cost = 0;

  bool operator==(const Schedule&) const = default;
};

// Renders "[0,1,1,0,0,1,1]".
std::string format_levels(const std::vector<int>& levels);

// All tuples whose summed direct cost is within budget, in lexicographic
// order (first control most significant). Throws SizingError above
// kScheduleHardCap.
std::vector<Schedule> enumerate_schedules(const Scenario& s, double budget);

// Schedules x targets matrix with entries residual_damage(s,t) + C(s).
LossMatrix schedule_loss_matrix(const Scenario& s, const std::vector<Schedule>& schedules);

// Indices (into `schedules`) of schedules that are not weakly dominated: s is
// dropped when some s' has loss <= everywhere, direct cost <= and is strictly
// better somewhere. Among exact duplicates the earliest survives.
std::vector<std::size_t> prune_dominated(const std::vector<Schedule>& schedules,
                                         const Scenario& s);

struct ScheduleWeight {
  Schedule schedule;
  double probability = 0;
};

struct FullGameResult {
  std::vector<ScheduleWeight> support;  // schedules with probability > 1e-9
  std::vector<double> attacker;         // over targets
  double weakest_target_damage = 0;     // max_t sum_s phi_s residual(s,t)
  double value = 0;                     // game value, indirect cost included
  double duality_gap = 0;
  double expected_direct_cost = 0;
  double expected_indirect_cost = 0;
  std::size_t schedule_count = 0;       // enumerated
  std::size_t pruned_count = 0;         // solved after pruning
  std::size_t support_size = 0;
  EquilibriumCheck certification;       // against the unpruned game, eps 1e-7
  std::vector<std::string> warnings;

  // Marginal distribution of each control's level under the schedule mixture.
  std::vector<std::vector<double>> level_marginals(const Scenario& s) const;
};

// Throws SizingError when more than kMaxGameRows schedules survive pruning.
FullGameResult solve_full_game(const Scenario& s, double budget);

}  // namespace secinvest
