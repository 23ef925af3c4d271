#include <doctest.h>

#include <algorithm>

#include "secinvest/error.hpp"
#include "secinvest/knapsack.hpp"
#include "secinvest/oracle.hpp"
#include "secinvest/scenario_io.hpp"
#include "secinvest/sweep.hpp"
#include "support.hpp"

using namespace secinvest;
using testing_support::flat;

namespace {

double top_cost(const Scenario& s) {
  double total = 0;
  for (const auto& c : s.controls()) total += c.levels.back().direct_cost;
  return total;
}

Solution with(std::vector<int> choice, double direct) {
  Solution s;
  for (int c : choice) s.chosen.push_back({0, c, 0, {}, 0});
  s.total_direct_cost = direct;
  return s;
}

}  // namespace

TEST_CASE("budget 0 buys nothing") {
  const Scenario s = oracle::random_scenario(3, {4, 4, 6});
  for (auto mode : {KnapsackMode::Pure, KnapsackMode::Hybrid}) {
    const auto groups = mode == KnapsackMode::Pure ? pure_items(s) : MethodRunner(s).hybrid_groups();
    const Solution sol = solve_mcmo(groups, s, 0.0, mode);
    for (int c : sol.choices()) CHECK(c == 0);
    double worst = 0;
    for (double e : s.exposures()) worst = std::max(worst, e);
    CHECK(sol.worst_target_damage == worst);
    CHECK(sol.total_direct_cost == 0.0);
  }
}

TEST_CASE("an unlimited budget with free monotone controls buys every top level") {
  const Scenario s = oracle::random_scenario(5, {4, 4, 6}, {true, true});
  const Solution sol = solve_mcmo(pure_items(s), s, top_cost(s), KnapsackMode::Pure);
  // Lowest-cost tie-break may leave out levels whose targets are already
  // clamped; the damage must still match the all-top choice.
  std::vector<int> top;
  for (const auto& c : s.controls()) top.push_back(c.top_level());
  const Solution all = evaluate_choice(s, pure_items(s), top, KnapsackMode::Pure);
  CHECK(sol.worst_target_damage == doctest::Approx(all.worst_target_damage).epsilon(1e-12));

  // without overlap no tie can arise
  const Scenario disjoint = flat({10, 8, 6}, {{{{0.5, 0, 0}, 1, 0}, {{0.9, 0, 0}, 2, 0}},
                                              {{{0, 0.3, 0}, 1, 0}, {{0, 0.8, 0}, 4, 0}},
                                              {{{0, 0, 0.6}, 3, 0}}});
  CHECK(solve_mcmo(pure_items(disjoint), disjoint, 9, KnapsackMode::Pure).choices() ==
        std::vector<int>{2, 2, 1});
}

TEST_CASE("3 controls x 3 items x 4 targets equals exhaustive enumeration") {
  const Scenario s = oracle::random_scenario(42, {3, 2, 4});
  for (double b : {0.0, 1.0, 2.5, 4.0, 6.0, 9.0, 100.0}) {
    const auto groups = pure_items(s);
    const Solution a = solve_mcmo(groups, s, b, KnapsackMode::Pure);
    const Solution o = oracle::oracle_knapsack(groups, s, b, KnapsackMode::Pure);
    CHECK(a.objective == doctest::Approx(o.objective).epsilon(1e-12));
    CHECK(a.choices() == o.choices());
  }
}

TEST_CASE("tie-break prefers the cheapest then the lexicographically smallest") {
  const std::vector<Solution> costly{with({1, 0}, 20), with({0, 1}, 18)};
  CHECK(tiebreak(costly).choices() == std::vector<int>{0, 1});

  const std::vector<Solution> same{with({1, 2}, 5), with({1, 2}, 5)};
  CHECK(tiebreak(same) == same[0]);
  const std::vector<Solution> one{with({3, 1}, 2)};
  CHECK(tiebreak(std::vector<Solution>{tiebreak(one)}) == one[0]);

  const std::vector<Solution> lex{with({1, 1}, 7), with({0, 2}, 7)};
  CHECK(tiebreak(lex).choices() == std::vector<int>{0, 2});

  CHECK_THROWS_AS(tiebreak(std::vector<Solution>{}), InputError);
}

TEST_CASE("knapsack input errors") {
  const Scenario s = oracle::random_scenario(1);
  auto groups = pure_items(s);
  CHECK_THROWS_AS(solve_mcmo(groups, s, -1.0, KnapsackMode::Pure), InputError);
  CHECK_THROWS_AS(solve_mcmo({}, s, 1.0, KnapsackMode::Pure), InputError);
  auto no_null = groups;
  no_null[0].erase(no_null[0].begin());
  CHECK_THROWS_AS(solve_mcmo(no_null, s, 1.0, KnapsackMode::Pure), InputError);
  auto empty = groups;
  empty[1].clear();
  CHECK_THROWS_AS(solve_mcmo(empty, s, 1.0, KnapsackMode::Pure), InputError);
}

TEST_CASE("solver equals the oracle, stays feasible and is monotone in the objective") {
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    const Scenario s = oracle::random_scenario(seed, {5, 5, 8});
    const MethodRunner runner(s);
    for (auto mode : {KnapsackMode::Pure, KnapsackMode::Hybrid}) {
      const auto& groups = mode == KnapsackMode::Pure ? runner.pure_groups() : runner.hybrid_groups();
      std::vector<int> zeros(groups.size(), 0);
      const double null_obj = evaluate_choice(s, groups, zeros, mode).objective;
      double prev = 1e300;
      for (double b = 0.0; b <= top_cost(s) + 1.0; b += top_cost(s) / 6.0) {
        const Solution a = solve_mcmo(groups, s, b, mode);
        const Solution o = oracle::oracle_knapsack(groups, s, b, mode);
        CHECK(a.objective == doctest::Approx(o.objective).epsilon(1e-9));
        CHECK(a.choices() == o.choices());
        CHECK(a.total_direct_cost <= b);
        CHECK(a.objective <= prev + 1e-12);
        CHECK(a.objective <= null_obj);
        CHECK(a == solve_mcmo(groups, s, b, mode));
        prev = a.objective;
      }
    }
  }
}

TEST_CASE("seven groups of up to seven items equal the oracle") {
  const Scenario s = load_scenario(generate_case_study(default_impact_profile(), {}));
  const auto groups = pure_items(s);
  for (double b : {5.0, 18.0, 27.0, 41.0}) {
    const Solution a = solve_mcmo(groups, s, b, KnapsackMode::Pure);
    const Solution o = oracle::oracle_knapsack(groups, s, b, KnapsackMode::Pure);
    CHECK(a.objective == doctest::Approx(o.objective).epsilon(1e-9));
    CHECK(a.choices() == o.choices());
  }
}

TEST_CASE("pure damage can rise with budget when indirect costs differ") {
  // A: cost 1, C = 5, removes 60%. B: cost 3, C = 0, removes 55%.
  const Scenario s = flat({10.0}, {{{{0.6}, 1, 5}}, {{{0.55}, 3, 0}}});
  const Solution low = solve_mcmo(pure_items(s), s, 1.0, KnapsackMode::Pure);
  const Solution high = solve_mcmo(pure_items(s), s, 3.0, KnapsackMode::Pure);
  CHECK(low.choices() == std::vector<int>{1, 0});
  CHECK(high.choices() == std::vector<int>{0, 1});
  CHECK(high.objective < low.objective);
  CHECK(high.worst_target_damage > low.worst_target_damage);
}

TEST_CASE("budget sweep") {
  const Scenario s = oracle::random_scenario(9, {3, 4, 5});
  const std::vector<Method> all{Method::FullGame, Method::PureKnapsack, Method::Hybrid};

  SUBCASE("budget 0 gives the baseline for every method") {
    const auto pts = budget_sweep(s, {0.0}, all);
    REQUIRE(pts.size() == 3);
    for (const auto& p : pts) CHECK(p.weakest_damage == pts[0].weakest_damage);
  }
  SUBCASE("zero indirect cost makes hybrid and pure identical") {
    const Scenario z = oracle::random_scenario(9, {3, 4, 5}, {true, true});
    const auto budgets = budget_range(0, top_cost(z) + 1, 0.5);
    const auto pts = budget_sweep(z, budgets, {Method::PureKnapsack, Method::Hybrid});
    for (std::size_t k = 0; k < pts.size(); k += 2)
      CHECK(pts[k].weakest_damage == doctest::Approx(pts[k + 1].weakest_damage).epsilon(1e-12));
  }
  SUBCASE("one point per budget and method, hybrid nonincreasing") {
    const auto budgets = budget_range(0, top_cost(s), 1.0);
    const auto pts = budget_sweep(s, budgets, {Method::Hybrid, Method::PureKnapsack});
    CHECK(pts.size() == budgets.size() * 2);
    for (std::size_t k = 2; k < pts.size(); k += 2)
      CHECK(pts[k].weakest_damage <= pts[k - 2].weakest_damage + 1e-9);
  }
  SUBCASE("argument errors") {
    CHECK_THROWS_AS(budget_sweep(s, {1.0}, {}), InputError);
    CHECK_THROWS_AS(budget_sweep(s, {2.0, 1.0}, all), InputError);
    CHECK_THROWS_AS(budget_sweep(s, {1.0}, {Method::Hybrid, Method::Hybrid}), InputError);
    CHECK_THROWS_AS(budget_range(0, 1, 0), InputError);
    CHECK_THROWS_AS(budget_range(3, 1, 1), InputError);
  }
  CHECK(budget_range(0, 82, 1).size() == 83);
  CHECK(budget_range(0, 1, 0.1).size() == 11);
}
