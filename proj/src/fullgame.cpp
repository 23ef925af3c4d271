#include "secinvest/fullgame.hpp"

#include <algorithm>
#include <cmath>

#include "secinvest/error.hpp"

namespace secinvest {

std::string format_levels(const std::vector<int>& levels) {
  std::string out = "[";
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(levels[i]);
  }
  return out + "]";
}

std::vector<Schedule> enumerate_schedules(const Scenario& s, double budget) {
  if (!(budget >= 0.0) || !std::isfinite(budget))
    throw InputError("budget must be a finite number >= 0");

  const auto& controls = s.controls();
  const std::size_t c = controls.size();
  std::vector<Schedule> out;
  std::vector<int> levels(c, 0);

  // Depth-first walk; costs accumulate in control order.
  auto walk = [&](auto&& self, std::size_t j, double direct, double indirect) -> void {
    if (j == c) {
      if (out.size() >= kScheduleHardCap)
        throw SizingError("more than " + std::to_string(kScheduleHardCap) +
                          " schedules fit the budget; use the hybrid method");
      out.push_back({levels, direct, indirect});
      return;
    }
    for (const auto& lv : controls[j].levels) {
      const double d = direct + lv.direct_cost;
      if (d > budget) break;  // direct cost is nondecreasing in level
      levels[j] = lv.index;
      self(self, j + 1, d, indirect + lv.indirect_cost);
    }
    levels[j] = 0;
  };
  walk(walk, 0, 0.0, 0.0);
  return out;
}

namespace {

double schedule_residual(const Scenario& s, const Schedule& sch, std::size_t t) {
  const auto& controls = s.controls();
  double mit = 0.0;
  for (std::size_t j = 0; j < controls.size(); ++j)
    mit += controls[j].levels[static_cast<std::size_t>(sch.levels[j])].efficacy[t];
  return residual_from_mitigation(s, t, mit);
}

}  // namespace

LossMatrix schedule_loss_matrix(const Scenario& s, const std::vector<Schedule>& schedules) {
  const std::size_t n = s.target_count();
  LossMatrix m(schedules.size(), n);
  for (std::size_t r = 0; r < schedules.size(); ++r)
    for (std::size_t t = 0; t < n; ++t)
      m(r, t) = schedule_residual(s, schedules[r], t) + schedules[r].indirect_cost;
  for (std::size_t t = 0; t < n; ++t) m.col_labels.push_back(s.target_label(t));
  return m;
}

std::vector<std::size_t> prune_dominated(const std::vector<Schedule>& schedules,
                                         const Scenario& s) {
  const LossMatrix m = schedule_loss_matrix(s, schedules);
  std::vector<double> cost;
  cost.reserve(schedules.size());
  for (const auto& sch : schedules) cost.push_back(sch.direct_cost);
  return undominated_rows(m, cost, /*prefer_later=*/false);
}

std::vector<std::vector<double>> FullGameResult::level_marginals(const Scenario& s) const {
  std::vector<std::vector<double>> out;
  for (const auto& c : s.controls()) out.emplace_back(c.levels.size(), 0.0);
  for (const auto& w : support)
    for (std::size_t j = 0; j < out.size(); ++j)
      out[j][static_cast<std::size_t>(w.schedule.levels[j])] += w.probability;
  return out;
}

FullGameResult solve_full_game(const Scenario& s, double budget) {
  FullGameResult res;
  const auto schedules = enumerate_schedules(s, budget);
  res.schedule_count = schedules.size();
  if (schedules.size() > kScheduleWarnCount)
    res.warnings.push_back(std::to_string(schedules.size()) +
                           " schedules enumerated; consider the hybrid method");

  const LossMatrix full = schedule_loss_matrix(s, schedules);
  std::vector<double> cost;
  cost.reserve(schedules.size());
  for (const auto& sch : schedules) cost.push_back(sch.direct_cost);
  const auto keep = undominated_rows(full, cost, /*prefer_later=*/false);
  res.pruned_count = keep.size();
  if (keep.size() > kMaxGameRows)
    throw SizingError(std::to_string(keep.size()) +
                      " undominated schedules exceed the full game limit of " +
                      std::to_string(kMaxGameRows) + "; use the hybrid method");

  const Equilibrium eq = solve_zero_sum(full.select_rows(keep));
  res.value = eq.value;
  res.duality_gap = eq.duality_gap;
  res.attacker = eq.attacker;

  std::vector<double> phi(schedules.size(), 0.0);
  for (std::size_t k = 0; k < keep.size(); ++k) phi[keep[k]] = eq.defender[k];
  res.certification = verify_epsilon_equilibrium(full, phi, eq.attacker, 1e-7);
  if (!res.certification.ok)
    throw SolverError("full game strategy failed certification on the unpruned game", eq);

  const std::size_t n = s.target_count();
  std::vector<double> damage(n, 0.0);
  for (std::size_t r = 0; r < schedules.size(); ++r) {
    const double p = phi[r];
    if (p == 0.0) continue;
    for (std::size_t t = 0; t < n; ++t) damage[t] += p * schedule_residual(s, schedules[r], t);
    res.expected_direct_cost += p * schedules[r].direct_cost;
    res.expected_indirect_cost += p * schedules[r].indirect_cost;
    if (p > 1e-9) res.support.push_back({schedules[r], p});
  }
  res.weakest_target_damage = *std::max_element(damage.begin(), damage.end());
  res.support_size = res.support.size();
  return res;
}

}  // namespace secinvest
