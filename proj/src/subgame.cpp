#include "secinvest/subgame.hpp"

#include <cmath>
#include <sstream>

#include "secinvest/error.hpp"

namespace secinvest {

bool Plan::is_pure() const {
  int support = 0;
  for (double p : strategy)
    if (p > 0.0) ++support;
  return support == 1;
}

LossMatrix build_control_matrix(const Scenario& s, std::size_t control, int level_cap) {
  if (control >= s.control_count())
    throw ValidationError("control index " + std::to_string(control) + " out of range");
  const auto& c = s.controls()[control];
  if (level_cap < 0 || level_cap > c.top_level())
    throw ValidationError("control " + std::to_string(c.id) + ": level cap " +
                          std::to_string(level_cap) + " out of range 0.." +
                          std::to_string(c.top_level()));

  const std::size_t n = s.target_count();
  LossMatrix m(static_cast<std::size_t>(level_cap) + 1, n);
  for (int l = 0; l <= level_cap; ++l) {
    m.row_labels.push_back("level " + std::to_string(l));
    for (std::size_t t = 0; t < n; ++t)
      m(static_cast<std::size_t>(l), t) = defender_loss(s, control, l, t);
  }
  for (std::size_t t = 0; t < n; ++t) m.col_labels.push_back(s.target_label(t));
  return m;
}

Plan solve_subgame(const Scenario& s, std::size_t control, int level_cap) {
  const LossMatrix full = build_control_matrix(s, control, level_cap);
  const auto keep = undominated_rows(full, {}, /*prefer_later=*/true);
  const Equilibrium eq = solve_zero_sum(full.select_rows(keep));

  const auto& c = s.controls()[control];
  Plan plan;
  plan.control_id = c.id;
  plan.level_cap = level_cap;
  plan.strategy.assign(static_cast<std::size_t>(level_cap) + 1, 0.0);
  for (std::size_t k = 0; k < keep.size(); ++k) plan.strategy[keep[k]] = eq.defender[k];
  plan.guaranteed_loss = eq.value;
  plan.duality_gap = eq.duality_gap;

  plan.mitigation.assign(s.target_count(), 0.0);
  for (int l = 0; l <= level_cap; ++l) {
    const double p = plan.strategy[static_cast<std::size_t>(l)];
    if (p == 0.0) continue;
    const auto& lv = c.levels[static_cast<std::size_t>(l)];
    plan.expected_direct_cost += p * lv.direct_cost;
    plan.expected_indirect_cost += p * lv.indirect_cost;
    for (std::size_t t = 0; t < s.target_count(); ++t) plan.mitigation[t] += p * lv.efficacy[t];
  }
  return plan;
}

std::vector<Plan> enumerate_plans(const Scenario& s, std::size_t control) {
  if (control >= s.control_count())
    throw ValidationError("control index " + std::to_string(control) + " out of range");
  std::vector<Plan> plans;
  for (int cap = 0; cap <= s.controls()[control].top_level(); ++cap)
    plans.push_back(solve_subgame(s, control, cap));
  return plans;
}

std::vector<int> cost_regressions(const std::vector<Plan>& plans) {
  std::vector<int> caps;
  for (std::size_t k = 1; k < plans.size(); ++k)
    if (plans[k].expected_direct_cost < plans[k - 1].expected_direct_cost)
      caps.push_back(plans[k].level_cap);
  return caps;
}

std::vector<AdviceLine> render_plan_advice(const Plan& plan, int device_count) {
  if (device_count < 1) throw InputError("device count must be at least 1");
  std::vector<AdviceLine> lines;
  int assigned = 0;
  for (int l = static_cast<int>(plan.strategy.size()) - 1; l >= 0; --l) {
    const double p = plan.strategy[static_cast<std::size_t>(l)];
    if (p <= 0.0) continue;
    // Guard against 0.7 * 10 landing just under 7.
    const int devices = static_cast<int>(std::floor(p * device_count + 1e-9));
    lines.push_back({l, devices, 0.0});
    assigned += devices;
  }
  if (lines.empty()) throw InputError("plan has an empty strategy");
  lines.front().devices += device_count - assigned;
  std::erase_if(lines, [](const AdviceLine& a) { return a.devices == 0; });
  for (auto& a : lines) a.fraction = static_cast<double>(a.devices) / device_count;
  return lines;
}

std::string format_advice(const std::vector<AdviceLine>& lines, int device_count) {
  std::ostringstream out;
  int covered = 0;
  long shown = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& a = lines[i];
    // the last line takes the remainder so the shares add up to 100
    const long pct = i + 1 == lines.size() ? 100 - shown : std::lround(a.fraction * 100.0);
    shown += pct;
    out << "level " << a.level << " on ";
    if (lines.size() == 1)
      out << "all " << device_count << " devices (100%)";
    else if (i == 0)
      out << "the top " << a.devices << " of " << device_count << " devices (" << pct << "%)";
    else if (i + 1 == lines.size())
      out << "the remaining " << a.devices << " devices (" << pct << "%)";
    else
      out << "the next " << a.devices << " devices, ranks " << covered + 1 << "-"
          << covered + a.devices << " (" << pct << "%)";
    out << '\n';
    covered += a.devices;
  }
  return out.str();
}

}  // namespace secinvest
