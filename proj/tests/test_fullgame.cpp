#include <doctest.h>

#include <algorithm>

#include "secinvest/error.hpp"
#include "secinvest/fullgame.hpp"
#include "secinvest/oracle.hpp"
#include "secinvest/scenario_io.hpp"
#include "secinvest/sweep.hpp"
#include "support.hpp"

using namespace secinvest;
using testing_support::flat;

namespace {

const Scenario& case_study() {
  static const Scenario s = load_scenario(generate_case_study(default_impact_profile(), {}));
  return s;
}

}  // namespace

TEST_CASE("budget 0 leaves only the empty schedule") {
  const Scenario s = oracle::random_scenario(4);
  const auto sched = enumerate_schedules(s, 0.0);
  REQUIRE(sched.size() == 1);
  CHECK(sched[0].levels == std::vector<int>(s.control_count(), 0));

  const FullGameResult r = solve_full_game(s, 0.0);
  REQUIRE(r.support.size() == 1);
  CHECK(r.support[0].probability == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.weakest_target_damage ==
        doctest::Approx(*std::max_element(s.exposures().begin(), s.exposures().end())).epsilon(1e-12));
}

TEST_CASE("two single-level controls under budget 1 give three schedules in order") {
  const Scenario s = flat({4.0, 2.0}, {{{{0.5, 0.0}, 1, 0}}, {{{0.0, 0.5}, 1, 0}}});
  const auto sched = enumerate_schedules(s, 1.0);
  REQUIRE(sched.size() == 3);
  CHECK(sched[0].levels == std::vector<int>{0, 0});
  CHECK(sched[1].levels == std::vector<int>{0, 1});
  CHECK(sched[2].levels == std::vector<int>{1, 0});
  CHECK(enumerate_schedules(s, 2.0).size() == 4);
  CHECK_THROWS_AS(enumerate_schedules(s, -1.0), InputError);
}

TEST_CASE("case study at the full budget enumerates every tuple") {
  const Scenario& s = case_study();
  const auto sched = enumerate_schedules(s, kCaseStudyBudget);
  CHECK(sched.size() == 4u * 4 * 6 * 5 * 7 * 3 * 7);
  CHECK(sched.back().levels == std::vector<int>{3, 3, 5, 4, 6, 2, 6});
  CHECK(format_levels(sched.back().levels) == "[3,3,5,4,6,2,6]");
}

TEST_CASE("a single affordable schedule is played with certainty") {
  const Scenario s = flat({6.0, 3.0}, {{{{0.5, 0.5}, 2, 0}}});
  const FullGameResult r = solve_full_game(s, 1.0);
  REQUIRE(r.support.size() == 1);
  CHECK(r.support[0].schedule.levels == std::vector<int>{0});
  CHECK(r.schedule_count == 1);
}

TEST_CASE("pruning keeps the game value") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Scenario s = oracle::random_scenario(seed, {3, 3, 5});
    double top = 0;
    for (const auto& c : s.controls()) top += c.levels.back().direct_cost;
    const double budget = top * 0.6;
    const auto sched = enumerate_schedules(s, budget);
    const auto full = solve_zero_sum(schedule_loss_matrix(s, sched));
    const FullGameResult r = solve_full_game(s, budget);
    CHECK(r.value == doctest::Approx(full.value).epsilon(1e-9));
    CHECK(r.certification.ok);
    CHECK(r.pruned_count <= r.schedule_count);
    CHECK(r.duality_gap <= 1e-9);

    const auto kept = prune_dominated(sched, s);
    const auto m = schedule_loss_matrix(s, sched);
    std::vector<double> cost;
    for (const auto& x : sched) cost.push_back(x.direct_cost);
    for (std::size_t k : kept) CHECK_FALSE(oracle::is_weakly_dominated(m, cost, k));

    double total = 0;
    for (const auto& w : r.support) {
      CHECK(w.schedule.direct_cost <= budget);
      total += w.probability;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    for (const auto& marg : r.level_marginals(s)) {
      double sum = 0;
      for (double p : marg) sum += p;
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("without indirect cost the full game is never worse than the hybrid") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Scenario s = oracle::random_scenario(seed, {3, 3, 5}, {true, true});
    MethodRunner runner(s);
    for (double b : {1.0, 2.5, 4.0, 7.0}) {
      const double fg = runner.point(b, Method::FullGame).weakest_damage;
      const double hy = runner.point(b, Method::Hybrid).weakest_damage;
      CHECK(fg <= hy + 1e-9);
    }
  }
}

TEST_CASE("case study at budget 18 mixes a handful of packages") {
  const FullGameResult r = solve_full_game(case_study(), 18.0);
  CHECK(r.support.size() >= 2);
  CHECK(r.support.size() <= case_study().target_count());
  CHECK(r.certification.ok);
  double total = 0;
  for (const auto& w : r.support) {
    CHECK(w.schedule.direct_cost <= 18.0);
    total += w.probability;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.expected_direct_cost <= 18.0);
}
