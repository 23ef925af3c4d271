#include "secinvest/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>
#include <utility>

#include "secinvest/error.hpp"

namespace secinvest {

std::string_view to_string(Category c) {
  switch (c) {
    case Category::InsecureInteractions:
      return "insecure_interactions";
    case Category::RiskyResourceManagement:
      return "risky_resource_management";
    case Category::PorousDefences:
      return "porous_defences";
  }
  return "unknown";
}

Category category_from_string(std::string_view s) {
  for (auto c : {Category::InsecureInteractions, Category::RiskyResourceManagement,
                 Category::PorousDefences}) {
    if (s == to_string(c)) return c;
  }
  throw ValidationError("unknown vulnerability category '" + std::string(s) + "'");
}

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ValidationError(msg); }

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

void validate(const ScenarioData& d) {
  if (d.depths.empty()) fail("depths: at least one depth is required");
  if (d.vulnerabilities.empty()) fail("vulnerabilities: at least one vulnerability is required");
  if (d.targets.empty()) fail("targets: at least one target is required");
  if (d.controls.empty()) fail("controls: at least one control is required");
  if (!(d.residual_floor >= 0.0 && d.residual_floor < 1.0))
    fail("residual_floor: must lie in [0, 1)");

  std::set<int> depth_ids;
  for (const auto& dep : d.depths) {
    const auto where = "depths[id=" + std::to_string(dep.id) + "]";
    if (!depth_ids.insert(dep.id).second) fail(where + ".id: duplicate id");
    if (!finite_nonneg(dep.impact)) fail(where + ".impact: must be finite and >= 0");
  }

  std::set<int> vuln_ids;
  for (const auto& v : d.vulnerabilities) {
    const auto where = "vulnerabilities[id=" + std::to_string(v.id) + "]";
    if (!vuln_ids.insert(v.id).second) fail(where + ".id: duplicate id");
    if (!(v.threat > 0.0 && v.threat <= 1.0)) fail(where + ".threat: must lie in (0, 1]");
    static constexpr const char* kFactorNames[] = {"pr", "af", "ed", "aa"};
    const auto f = v.factors.as_array();
    for (std::size_t k = 0; k < f.size(); ++k) {
      if (f[k] < 1 || f[k] > 3)
        fail(where + ".factors." + kFactorNames[k] + ": must be 1, 2 or 3 (got " +
             std::to_string(f[k]) + ")");
    }
    if (!finite_nonneg(v.repair_cost)) fail(where + ".repair_cost: must be finite and >= 0");
  }

  std::set<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < d.targets.size(); ++i) {
    const auto& t = d.targets[i];
    const auto where = "targets[" + std::to_string(i) + "]";
    if (!vuln_ids.count(t.vulnerability_id))
      fail(where + ".vulnerability: unknown id " + std::to_string(t.vulnerability_id));
    if (!depth_ids.count(t.depth_id))
      fail(where + ".depth: unknown id " + std::to_string(t.depth_id));
    if (!pairs.insert({t.vulnerability_id, t.depth_id}).second)
      fail(where + ": duplicate (vulnerability, depth) pair");
  }

  std::set<int> control_ids;
  const std::size_t n = d.targets.size();
  for (const auto& c : d.controls) {
    const auto where = "controls[id=" + std::to_string(c.id) + "]";
    if (!control_ids.insert(c.id).second) fail(where + ".id: duplicate id");
    if (c.levels.size() < 2) fail(where + ".levels: needs level 0 plus at least one real level");
    for (std::size_t l = 0; l < c.levels.size(); ++l) {
      const auto& lv = c.levels[l];
      const auto lw = where + ".levels[" + std::to_string(l) + "]";
      if (lv.index != static_cast<int>(l)) fail(lw + ".index: level indices must be contiguous from 0");
      if (lv.efficacy.size() != n)
        fail(lw + ".efficacy: expected " + std::to_string(n) + " entries, got " +
             std::to_string(lv.efficacy.size()));
      for (double e : lv.efficacy) {
        if (!(std::isfinite(e) && e >= 0.0 && e < 1.0)) fail(lw + ".efficacy: entries must lie in [0, 1)");
        if (l == 0 && e != 0.0) fail(lw + ".efficacy: level 0 must have zero efficacy");
      }
      if (!finite_nonneg(lv.direct_cost)) fail(lw + ".direct_cost: must be finite and >= 0");
      if (!finite_nonneg(lv.indirect_cost)) fail(lw + ".indirect_cost: must be finite and >= 0");
      if (l == 0 && lv.direct_cost != 0.0) fail(lw + ".direct_cost: level 0 must cost 0");
      if (l == 0 && lv.indirect_cost != 0.0) fail(lw + ".indirect_cost: level 0 must cost 0");
      if (l > 0 && lv.direct_cost < c.levels[l - 1].direct_cost)
        fail(lw + ".direct_cost: must be nondecreasing in level");
      if (l > 0 && lv.indirect_cost < c.levels[l - 1].indirect_cost)
        fail(lw + ".indirect_cost: must be nondecreasing in level");
    }
  }
}

Scenario::Scenario(ScenarioData data) : data_(std::move(data)) {
  validate(data_);
  std::unordered_map<int, double> impact_by_id;
  for (const auto& d : data_.depths) impact_by_id[d.id] = d.impact;
  std::unordered_map<int, double> threat_by_id;
  for (const auto& v : data_.vulnerabilities) threat_by_id[v.id] = v.threat;
  for (const auto& t : data_.targets) {
    impact_.push_back(impact_by_id.at(t.depth_id));
    threat_.push_back(threat_by_id.at(t.vulnerability_id));
    exposure_.push_back(impact_.back() * threat_.back());
  }
}

std::size_t Scenario::control_index(int control_id) const {
  for (std::size_t j = 0; j < data_.controls.size(); ++j) {
    if (data_.controls[j].id == control_id) return j;
  }
  throw ValidationError("control id " + std::to_string(control_id) + " not in scenario");
}

const ControlLevel& Scenario::level(std::size_t control, int level_index) const {
  if (control >= data_.controls.size())
    throw ValidationError("control index " + std::to_string(control) + " out of range");
  const auto& c = data_.controls[control];
  if (level_index < 0 || level_index > c.top_level())
    throw ValidationError("control " + std::to_string(c.id) + ": level " +
                          std::to_string(level_index) + " out of range");
  return c.levels[static_cast<std::size_t>(level_index)];
}

std::string Scenario::target_label(std::size_t target) const {
  const auto& t = data_.targets.at(target);
  return "v" + std::to_string(t.vulnerability_id) + "@d" + std::to_string(t.depth_id);
}

namespace {

void check_target(const Scenario& s, std::size_t target) {
  if (target >= s.target_count())
    throw ValidationError("target index " + std::to_string(target) + " out of range");
}

}  // namespace

double expected_damage(const Scenario& s, std::size_t control, int level, std::size_t target) {
  check_target(s, target);
  const auto& lv = s.level(control, level);
  return s.exposure(target) * (1.0 - lv.efficacy[target]);
}

double defender_loss(const Scenario& s, std::size_t control, int level, std::size_t target) {
  return expected_damage(s, control, level, target) + s.level(control, level).indirect_cost;
}

double combine_mitigation(std::span<const double> per_control, double residual_floor) {
  double sum = 0.0;
  for (double m : per_control) sum += m;
  return std::min(1.0 - residual_floor, sum);
}

double combined_mitigation(const Scenario& s, std::span<const int> levels, std::size_t target) {
  check_target(s, target);
  if (levels.size() != s.control_count())
    throw ValidationError("level choice must name one level per control (" +
                          std::to_string(s.control_count()) + "), got " +
                          std::to_string(levels.size()));
  double sum = 0.0;
  for (std::size_t j = 0; j < levels.size(); ++j) sum += s.level(j, levels[j]).efficacy[target];
  return std::min(1.0 - s.residual_floor(), sum);
}

double residual_damage(const Scenario& s, std::span<const int> levels, std::size_t target) {
  return s.exposure(target) * (1.0 - combined_mitigation(s, levels, target));
}

double residual_from_mitigation(const Scenario& s, std::size_t target, double mitigation) {
  return s.exposure(target) * (1.0 - std::min(1.0 - s.residual_floor(), mitigation));
}

}  // namespace secinvest
