#include "secinvest/knapsack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "secinvest/error.hpp"

namespace secinvest {

std::vector<int> Solution::choices() const {
  std::vector<int> out;
  out.reserve(chosen.size());
  for (const auto& it : chosen) out.push_back(it.choice);
  return out;
}

bool Solution::operator==(const Solution& o) const {
  return choices() == o.choices() && worst_target_damage == o.worst_target_damage &&
         total_direct_cost == o.total_direct_cost &&
         total_indirect_cost == o.total_indirect_cost && objective == o.objective;
}

std::string_view to_string(KnapsackMode m) {
  return m == KnapsackMode::Pure ? "knapsack" : "hybrid";
}

ItemGroups pure_items(const Scenario& s) {
  ItemGroups groups;
  for (const auto& c : s.controls()) {
    auto& g = groups.emplace_back();
    for (const auto& lv : c.levels)
      g.push_back({c.id, lv.index, lv.direct_cost, lv.efficacy, lv.indirect_cost});
  }
  return groups;
}

ItemGroups hybrid_items(const Scenario& s, std::span<const std::vector<Plan>> plans) {
  if (plans.size() != s.control_count())
    throw InputError("hybrid items need one plan list per control");
  ItemGroups groups;
  for (const auto& per_control : plans) {
    auto& g = groups.emplace_back();
    for (const auto& p : per_control)
      g.push_back({p.control_id, p.level_cap, p.expected_direct_cost, p.mitigation, 0.0});
  }
  return groups;
}

namespace {

void check_groups(const ItemGroups& groups, const Scenario& s) {
  if (groups.empty()) throw InputError("knapsack needs at least one item group");
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].empty())
      throw InputError("item group " + std::to_string(g) + " is empty");
    bool has_null = false;
    for (const auto& it : groups[g]) {
      if (it.mitigation.size() != s.target_count())
        throw InputError("item mitigation length must equal the target count");
      if (!(it.direct_cost >= 0.0) || !(it.indirect_cost >= 0.0))
        throw InputError("item costs must be nonnegative");
      if (it.direct_cost == 0.0 &&
          std::all_of(it.mitigation.begin(), it.mitigation.end(), [](double m) { return m == 0.0; }))
        has_null = true;
    }
    if (!has_null) throw InputError("item group " + std::to_string(g) + " lacks a null item");
  }
}

double worst_damage(const Scenario& s, std::span<const double> mitigation) {
  double worst = 0.0;
  for (std::size_t t = 0; t < mitigation.size(); ++t)
    worst = std::max(worst, residual_from_mitigation(s, t, mitigation[t]));
  return worst;
}

class BranchAndBound {
 public:
  BranchAndBound(const ItemGroups& groups, const Scenario& s, double budget, KnapsackMode mode)
      : groups_(groups), s_(s), budget_(budget), mode_(mode), n_(s.target_count()) {
    const std::size_t g = groups.size();
    suffix_mit_.assign((g + 1) * n_, 0.0);
    suffix_min_c_.assign(g + 1, 0.0);
    for (std::size_t k = g; k-- > 0;) {
      double min_c = std::numeric_limits<double>::infinity();
      for (std::size_t t = 0; t < n_; ++t) {
        double best = 0.0;
        for (const auto& it : groups[k]) best = std::max(best, it.mitigation[t]);
        suffix_mit_[k * n_ + t] = suffix_mit_[(k + 1) * n_ + t] + best;
      }
      for (const auto& it : groups[k]) min_c = std::min(min_c, it.indirect_cost);
      suffix_min_c_[k] = suffix_min_c_[k + 1] + min_c;
    }
    double scale = 1.0;
    for (double e : s.exposures()) scale = std::max(scale, e);
    slack_ = 1e-12 * scale;
  }

  std::vector<std::vector<int>> run() {
    pick_.assign(groups_.size(), 0);
    std::vector<double> mit(n_, 0.0);
    descend(0, mit, 0.0, 0.0);
    std::vector<std::vector<int>> out;
    for (const auto& c : candidates_)
      if (c.objective <= best_ + kObjectiveTieTolerance) out.push_back(c.pick);
    return out;
  }

 private:
  struct Candidate {
    std::vector<int> pick;
    double objective;
  };

  double lower_bound(std::size_t k, const std::vector<double>& mit, double indirect) const {
    double worst = 0.0;
    for (std::size_t t = 0; t < n_; ++t)
      worst = std::max(worst, residual_from_mitigation(s_, t, mit[t] + suffix_mit_[k * n_ + t]));
    if (mode_ == KnapsackMode::Pure) worst += indirect + suffix_min_c_[k];
    return worst;
  }

  void descend(std::size_t k, const std::vector<double>& mit, double cost, double indirect) {
    if (k == groups_.size()) {
      double obj = worst_damage(s_, mit);
      if (mode_ == KnapsackMode::Pure) obj += indirect;
      if (obj > best_ + kObjectiveTieTolerance) return;
      if (obj < best_) {
        best_ = obj;
        std::erase_if(candidates_, [&](const Candidate& c) {
          return c.objective > best_ + kObjectiveTieTolerance;
        });
      }
      candidates_.push_back({pick_, obj});
      return;
    }
    if (lower_bound(k, mit, indirect) > best_ + kObjectiveTieTolerance + slack_) return;

    std::vector<double> next(n_);
    const auto& group = groups_[k];
    for (std::size_t i = 0; i < group.size(); ++i) {
      const auto& it = group[i];
      const double c = cost + it.direct_cost;
      if (c > budget_) continue;
      for (std::size_t t = 0; t < n_; ++t) next[t] = mit[t] + it.mitigation[t];
      pick_[k] = static_cast<int>(i);
      descend(k + 1, next, c, indirect + it.indirect_cost);
    }
  }

  const ItemGroups& groups_;
  const Scenario& s_;
  double budget_;
  KnapsackMode mode_;
  std::size_t n_;
  std::vector<double> suffix_mit_;
  std::vector<double> suffix_min_c_;
  double slack_ = 0.0;
  double best_ = std::numeric_limits<double>::infinity();
  std::vector<int> pick_;
  std::vector<Candidate> candidates_;
};

}  // namespace

Solution evaluate_choice(const Scenario& s, const ItemGroups& groups, std::span<const int> pick,
                         KnapsackMode mode) {
  if (pick.size() != groups.size()) throw InputError("choice must name one item per group");
  Solution sol;
  std::vector<double> mit(s.target_count(), 0.0);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto& it = groups[g].at(static_cast<std::size_t>(pick[g]));
    sol.chosen.push_back(it);
    sol.total_direct_cost += it.direct_cost;
    sol.total_indirect_cost += it.indirect_cost;
    for (std::size_t t = 0; t < mit.size(); ++t) mit[t] += it.mitigation[t];
  }
  sol.worst_target_damage = worst_damage(s, mit);
  sol.objective = sol.worst_target_damage;
  if (mode == KnapsackMode::Pure) sol.objective += sol.total_indirect_cost;
  return sol;
}

Solution solve_mcmo(const ItemGroups& groups, const Scenario& s, double budget, KnapsackMode mode) {
  if (!(budget >= 0.0) || !std::isfinite(budget))
    throw InputError("budget must be a finite number >= 0");
  check_groups(groups, s);

  BranchAndBound bb(groups, s, budget, mode);
  std::vector<Solution> candidates;
  for (const auto& pick : bb.run()) candidates.push_back(evaluate_choice(s, groups, pick, mode));
  return tiebreak(candidates);
}

Solution tiebreak(std::span<const Solution> candidates) {
  if (candidates.empty()) throw InputError("tiebreak needs at least one candidate");
  double cheapest = std::numeric_limits<double>::infinity();
  for (const auto& c : candidates) cheapest = std::min(cheapest, c.total_direct_cost);
  const Solution* best = nullptr;
  std::vector<int> best_choice;
  for (const auto& c : candidates) {
    if (c.total_direct_cost > cheapest + kCostTieTolerance) continue;
    auto ch = c.choices();
    if (!best || ch < best_choice) {
      best = &c;
      best_choice = std::move(ch);
    }
  }
  return *best;
}

}  // namespace secinvest
