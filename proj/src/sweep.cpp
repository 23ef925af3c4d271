#include "secinvest/sweep.hpp"

#include <algorithm>
#include <cmath>

#include "secinvest/error.hpp"

namespace secinvest {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::FullGame: return "fullgame";
    case Method::PureKnapsack: return "knapsack";
    case Method::Hybrid: return "hybrid";
  }
  return "?";
}

Method method_from_string(std::string_view s) {
  if (s == "fullgame") return Method::FullGame;
  if (s == "knapsack") return Method::PureKnapsack;
  if (s == "hybrid") return Method::Hybrid;
  throw InputError("unknown method '" + std::string(s) + "' (expected fullgame, knapsack or hybrid)");
}

MethodRunner::MethodRunner(const Scenario& s) : s_(s), pure_(pure_items(s)) {}

const std::vector<std::vector<Plan>>& MethodRunner::plans() const {
  if (!plans_) {
    std::vector<std::vector<Plan>> all;
    for (std::size_t j = 0; j < s_.control_count(); ++j) all.push_back(enumerate_plans(s_, j));
    plans_ = std::move(all);
  }
  return *plans_;
}

const ItemGroups& MethodRunner::hybrid_groups() const {
  if (!hybrid_) hybrid_ = hybrid_items(s_, plans());
  return *hybrid_;
}

Solution MethodRunner::knapsack(double budget, KnapsackMode mode) const {
  return mode == KnapsackMode::Pure ? solve_mcmo(pure_, s_, budget, mode)
                                    : solve_mcmo(hybrid_groups(), s_, budget, mode);
}

SweepPoint MethodRunner::point(double budget, Method method) const {
  SweepPoint p;
  p.budget = budget;
  p.method = method;
  if (method == Method::FullGame) {
    const auto r = full_game(budget);
    p.weakest_damage = r.weakest_target_damage;
    p.total_direct_cost = r.expected_direct_cost;
    p.total_indirect_cost = r.expected_indirect_cost;
    p.support_size = r.support_size;
    return p;
  }
  const auto mode = method == Method::PureKnapsack ? KnapsackMode::Pure : KnapsackMode::Hybrid;
  const Solution sol = knapsack(budget, mode);
  p.weakest_damage = sol.worst_target_damage;
  p.total_direct_cost = sol.total_direct_cost;
  p.choices = sol.choices();
  if (mode == KnapsackMode::Pure) {
    p.total_indirect_cost = sol.total_indirect_cost;
  } else {
    // Hybrid items carry no indirect cost; report what the chosen plans expect.
    const auto& all = plans();
    for (std::size_t j = 0; j < all.size(); ++j)
      p.total_indirect_cost += all[j][static_cast<std::size_t>(p.choices[j])].expected_indirect_cost;
  }
  return p;
}

std::vector<SweepPoint> budget_sweep(const Scenario& s, const std::vector<double>& budgets,
                                     const std::vector<Method>& methods) {
  if (methods.empty()) throw InputError("sweep needs at least one method");
  if (budgets.empty()) throw InputError("sweep needs at least one budget");
  for (std::size_t i = 0; i < methods.size(); ++i)
    for (std::size_t k = 0; k < i; ++k)
      if (methods[i] == methods[k])
        throw InputError("method '" + std::string(to_string(methods[i])) + "' given twice");
  if (!std::is_sorted(budgets.begin(), budgets.end()))
    throw InputError("sweep budgets must be ascending");

  MethodRunner runner(s);
  std::vector<SweepPoint> out;
  out.reserve(budgets.size() * methods.size());
  for (double b : budgets)
    for (Method m : methods) out.push_back(runner.point(b, m));
  return out;
}

std::vector<double> budget_range(double a, double b, double step) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(step))
    throw InputError("budget range must be finite");
  if (!(step > 0.0)) throw InputError("budget range step must be > 0");
  if (a < 0.0) throw InputError("budget range must start at >= 0");
  if (b < a) throw InputError("budget range is empty (end before start)");
  std::vector<double> out;
  const auto n = static_cast<long long>(std::floor((b - a) / step + 1e-9));
  for (long long k = 0; k <= n; ++k) out.push_back(a + static_cast<double>(k) * step);
  return out;
}

}  // namespace secinvest
