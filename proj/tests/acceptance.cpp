// Acceptance run. Prints one PASS/FAIL line per criterion and exits nonzero
// when any selected criterion fails. With arguments (e.g. "AC3 AC7") only
// those criteria run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "secinvest/cli.hpp"
#include "secinvest/fullgame.hpp"
#include "secinvest/game.hpp"
#include "secinvest/knapsack.hpp"
#include "secinvest/oracle.hpp"
#include "secinvest/scenario_io.hpp"
#include "secinvest/subgame.hpp"
#include "secinvest/sweep.hpp"

using namespace secinvest;
namespace fs = std::filesystem;

namespace {

// Tolerances, all fixed here.
constexpr double kGapTol = 1e-9;
constexpr double kCertifyEps = 1e-7;
constexpr double kClosedFormTol = 1e-9;
constexpr double kAffineEps = 1e-8;
constexpr double kKnapsackTol = 1e-9;
constexpr double kSeriesTol = 1e-9;
constexpr double kMonotoneTol = 1e-9;
constexpr double kCalibrationTol = 1e-6;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

const Scenario& case_study(IndirectPreset preset) {
  static const Scenario none =
      load_scenario(generate_case_study(default_impact_profile(), {IndirectPreset::None, {}}));
  static const Scenario normal =
      load_scenario(generate_case_study(default_impact_profile(), {IndirectPreset::Normal, {}}));
  return preset == IndirectPreset::None ? none : normal;
}

std::vector<double> series(const std::vector<SweepPoint>& pts, Method m) {
  std::vector<double> out;
  for (const auto& p : pts)
    if (p.method == m) out.push_back(p.weakest_damage);
  return out;
}

Verdict ac1() {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> dim(1, 20);
  double worst_gap = 0, worst_regret = 0;
  int failures = 0;
  for (int k = 0; k < 1000; ++k) {
    const auto m = oracle::random_matrix(rng, dim(rng), dim(rng));
    const auto eq = solve_zero_sum(m);
    const auto chk = verify_epsilon_equilibrium(m, eq.defender, eq.attacker, kCertifyEps);
    worst_gap = std::max(worst_gap, eq.duality_gap);
    worst_regret = std::max({worst_regret, chk.defender_regret, chk.attacker_regret});
    if (eq.duality_gap > kGapTol || !chk.ok) ++failures;
  }
  return {failures == 0, "1000 matrices up to 20x20, max gap " + fmt("%.2e", worst_gap) +
                             " (tol 1e-9), max regret " + fmt("%.2e", worst_regret) +
                             " (eps 1e-7), failures " + std::to_string(failures)};
}

Verdict ac2() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> s(0.0, 10.0), c(0.0, 3.0);
  int interior = 0, interior_fail = 0;
  double worst = 0;
  while (interior < 1000) {
    const double a = s(rng), b = s(rng), x = s(rng), y = s(rng), cl = c(rng), clp = c(rng);
    const auto out = analytic_2x2(a, b, x, y, cl, clp);
    if (out.kind != TwoByTwoKind::Mixed) continue;
    if (out.phi < 1e-3 || out.phi > 1 - 1e-3 || out.theta < 1e-3 || out.theta > 1 - 1e-3) continue;
    ++interior;
    const auto eq = solve_zero_sum(LossMatrix{{a + cl, b + cl}, {x + clp, y + clp}});
    const double d = std::max({std::abs(eq.defender[0] - out.phi), std::abs(eq.attacker[0] - out.theta),
                               std::abs(eq.value - out.value)});
    worst = std::max(worst, d);
    if (d > kClosedFormTol) ++interior_fail;
  }

  // Sign-condition instances: rows l, l' and the expected pure cell.
  int pure = 0, pure_fail = 0;
  int per_cell[4] = {0, 0, 0, 0};
  while (pure < 1000) {
    const double a = s(rng), b = s(rng), x = s(rng), y = s(rng), cl = c(rng), clp = c(rng);
    const double dC = clp - cl, dSt = a - x, dStp = b - y, dSl = a - b, dSlp = x - y;
    double phi = -1, theta = -1;
    int cell = -1;
    if (dSt > dC && dStp > dC && dSlp != 0) {
      phi = 0, theta = dSlp > 0 ? 1 : 0, cell = dSlp > 0 ? 0 : 1;
    } else if (dSt < dC && dStp < dC && dSl != 0) {
      phi = 1, theta = dSl > 0 ? 1 : 0, cell = dSl > 0 ? 2 : 3;
    }
    if (cell < 0 || per_cell[cell] >= 250) continue;
    ++per_cell[cell];
    ++pure;
    const auto out = analytic_2x2(a, b, x, y, cl, clp);
    if (out.kind != TwoByTwoKind::Pure || out.phi != phi || out.theta != theta) ++pure_fail;
  }
  return {interior_fail == 0 && pure_fail == 0,
          "1000 interior games, max deviation " + fmt("%.2e", worst) + " (tol 1e-9), failures " +
              std::to_string(interior_fail) + "; 1000 sign-condition games (250 per cell), " +
              "cell mismatches " + std::to_string(pure_fail)};
}

Verdict ac3() {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> dim(2, 6);
  std::uniform_real_distribution<double> omega(-5.0, -0.01), psi(-10.0, 10.0), kappa(0.0, 5.0),
      mu(-10.0, 10.0);
  int attacker_fail = 0, indirect_fail = 0;
  for (int k = 0; k < 500; ++k) {
    const auto m = oracle::random_matrix(rng, dim(rng), dim(rng));
    if (!apply_affine_attacker(m, {omega(rng), psi(rng)}, kAffineEps).check.ok) ++attacker_fail;
  }
  for (int k = 0; k < 500; ++k) {
    const auto m = oracle::random_matrix(rng, dim(rng), dim(rng), 0.0, 10.0);
    double kp = kappa(rng);
    while (kp <= 0.0 || kp == 1.0) kp = kappa(rng);
    if (!apply_affine_indirect(m, kp, mu(rng), kAffineEps).ok()) ++indirect_fail;
  }
  return {attacker_fail == 0 && indirect_fail == 0,
          "negative affine attacker payoff: 500 instances, " + std::to_string(attacker_fail) +
              " failures; affine indirect cost: 500 instances, " + std::to_string(indirect_fail) +
              " failures (eps 1e-8)"};
}

Verdict ac4() {
  int fail = 0, checks = 0;
  double worst = 0;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    std::mt19937_64 rng(seed * 7919);
    const oracle::RandomSizes sizes{std::uniform_int_distribution<int>(2, 5)(rng),
                                    std::uniform_int_distribution<int>(1, 4)(rng),
                                    std::uniform_int_distribution<int>(2, 8)(rng)};
    const Scenario s = oracle::random_scenario(seed, sizes);
    double top = 0;
    for (const auto& c : s.controls()) top += c.levels.back().direct_cost;
    const double budget = std::uniform_real_distribution<double>(0.0, 1.1)(rng) * top;
    const MethodRunner runner(s);
    for (auto mode : {KnapsackMode::Pure, KnapsackMode::Hybrid}) {
      const auto& groups = mode == KnapsackMode::Pure ? runner.pure_groups() : runner.hybrid_groups();
      const Solution a = solve_mcmo(groups, s, budget, mode);
      const Solution o = oracle::oracle_knapsack(groups, s, budget, mode);
      ++checks;
      worst = std::max(worst, std::abs(a.objective - o.objective));
      if (std::abs(a.objective - o.objective) > kKnapsackTol || a.choices() != o.choices()) ++fail;
    }
  }
  return {fail == 0, std::to_string(checks) + " instances (1000 seeds x pure/hybrid), max objective gap " +
                         fmt("%.2e", worst) + " (tol 1e-9), mismatches " + std::to_string(fail)};
}

Verdict ac5() {
  const Scenario& s = case_study(IndirectPreset::None);
  const auto pts = budget_sweep(s, budget_range(0, 82, 1),
                                {Method::FullGame, Method::PureKnapsack, Method::Hybrid});
  const auto fg = series(pts, Method::FullGame), pure = series(pts, Method::PureKnapsack),
             hy = series(pts, Method::Hybrid);
  double hp = 0;
  int above = 0;
  double strict = 0;
  for (std::size_t b = 0; b < fg.size(); ++b) {
    hp = std::max(hp, std::abs(hy[b] - pure[b]));
    if (fg[b] > std::min(hy[b], pure[b]) + kSeriesTol) ++above;
    strict = std::max(strict, pure[b] - fg[b]);
  }
  return {hp <= kSeriesTol && above == 0,
          "83 budgets, max |hybrid - pure| " + fmt("%.2e", hp) + " (tol 1e-9), full game above " +
              "either in " + std::to_string(above) + " budgets, largest full-game advantage " +
              fmt("%.4f", strict)};
}

Verdict ac6() {
  const Scenario& s = case_study(IndirectPreset::None);
  int plans = 0, bad = 0;
  for (std::size_t j = 0; j < s.control_count(); ++j)
    for (const auto& p : enumerate_plans(s, j)) {
      ++plans;
      if (!p.is_pure() || p.strategy[static_cast<std::size_t>(p.level_cap)] != 1.0) ++bad;
    }
  return {bad == 0, std::to_string(plans) + " sub-game plans, " + std::to_string(bad) +
                        " not pure on their top level"};
}

Verdict ac7() {
  int pure_bad = 0, hybrid_bad = 0;
  double pure_rise = 0;
  std::uint64_t first_pure = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Scenario s = oracle::random_scenario(seed, {4, 4, 6});
    double top = 0;
    for (const auto& c : s.controls()) top += c.levels.back().direct_cost;
    const auto pts = budget_sweep(s, budget_range(0, top + 0.5, 0.5),
                                  {Method::PureKnapsack, Method::Hybrid});
    for (Method m : {Method::PureKnapsack, Method::Hybrid}) {
      const auto d = series(pts, m);
      double rise = 0;
      for (std::size_t k = 1; k < d.size(); ++k) rise = std::max(rise, d[k] - d[k - 1]);
      if (rise > kMonotoneTol) {
        if (m == Method::PureKnapsack) {
          ++pure_bad;
          pure_rise = std::max(pure_rise, rise);
          if (!first_pure) first_pure = seed;
        } else {
          ++hybrid_bad;
        }
      }
    }
  }
  std::string detail = "100 scenarios, budgets step 0.5: hybrid nonincreasing in " +
                       std::to_string(100 - hybrid_bad) + "/100, pure nonincreasing in " +
                       std::to_string(100 - pure_bad) + "/100";
  if (pure_bad)
    detail += " (largest pure rise " + fmt("%.4f", pure_rise) + ", first at seed " +
              std::to_string(first_pure) +
              "; pure minimizes damage plus summed indirect cost, which can trade damage for "
              "indirect cost as the budget grows)";
  return {pure_bad == 0 && hybrid_bad == 0, detail};
}

Verdict ac8() {
  const Scenario& s = case_study(IndirectPreset::Normal);
  const auto budgets = budget_range(0, 82, 1);
  const auto pts = budget_sweep(s, budgets, {Method::FullGame, Method::PureKnapsack, Method::Hybrid});
  const auto fg = series(pts, Method::FullGame), pure = series(pts, Method::PureKnapsack),
             hy = series(pts, Method::Hybrid);
  std::string witnesses;
  for (std::size_t b = 0; b < budgets.size(); ++b)
    if (hy[b] < pure[b] - kSeriesTol) witnesses += (witnesses.empty() ? "" : ",") + fmt("%g", budgets[b]);

  std::string rises;
  for (std::size_t b = 1; b < fg.size(); ++b)
    if (fg[b] > fg[b - 1] + kSeriesTol) rises += (rises.empty() ? "" : ",") + fmt("%g", budgets[b]);
  std::size_t b0 = fg.size() - 1;
  while (b0 > 0 && std::abs(fg[b0 - 1] - fg.back()) <= kSeriesTol) --b0;
  const bool plateau = b0 + 1 < fg.size();
  const bool fg_ok = !rises.empty() || plateau;

  std::string detail = "hybrid < pure at budgets {" + witnesses + "}; full game ";
  if (!rises.empty()) detail += "rises at budgets {" + rises + "}, ";
  detail += plateau ? "plateaus at " + fmt("%.6g", fg.back()) + " from budget " + fmt("%g", budgets[b0])
                    : "has no plateau";
  return {!witnesses.empty() && fg_ok, detail};
}

Verdict ac9() {
  const Scenario& s = case_study(IndirectPreset::Normal);
  std::vector<int> levels;
  double top = 0;
  for (const auto& c : s.controls()) {
    levels.push_back(c.top_level());
    top += c.levels.back().direct_cost;
  }
  const std::vector<AttackFactors> published = {
      {2, 3, 3, 3}, {1, 3, 3, 3}, {2, 3, 3, 3}, {2, 3, 3, 3}, {1, 2, 2, 3}, {2, 3, 2, 2},
      {2, 2, 3, 2}, {1, 2, 2, 3}, {1, 2, 2, 2}, {2, 3, 2, 3}, {3, 3, 3, 1}, {1, 1, 2, 3}};
  bool factors = s.vulnerabilities().size() == published.size();
  for (std::size_t i = 0; factors && i < published.size(); ++i)
    factors = s.vulnerabilities()[i].factors == published[i];
  const bool ok = levels == std::vector<int>{3, 3, 5, 4, 6, 2, 6} && factors &&
                  s.depths().size() == 3 && std::abs(top - 82.0) <= kCalibrationTol;
  return {ok, "levels " + format_levels(levels) + ", " + std::to_string(s.vulnerabilities().size()) +
                  " vulnerabilities" + (factors ? " with matching factors" : " with factor mismatch") +
                  ", " + std::to_string(s.depths().size()) + " depths, top-level cost " +
                  fmt("%.9f", top) + " (82 +/- 1e-6)"};
}

Verdict ac10() {
  const auto root = fs::temp_directory_path() / "secinvest_acceptance_determinism";
  fs::remove_all(root);
  std::string csv[2];
  for (int run = 0; run < 2; ++run) {
    const auto dir = root / std::to_string(run);
    std::ostringstream out, err;
    const int code = cli::run({"sweep", "--method", "fullgame", "--method", "knapsack", "--method",
                               "hybrid", "--budget-range", "0:82:4", "--out", dir.string()},
                              out, err);
    if (code != 0) return {false, "sweep exited with " + std::to_string(code) + ": " + err.str()};
    std::ifstream in(dir / "sweep.csv", std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    csv[run] = buf.str();
  }
  fs::remove_all(root);
  return {csv[0] == csv[1] && !csv[0].empty(),
          "two sweeps (3 methods, budgets 0:82:4), " + std::to_string(csv[0].size()) + " bytes, " +
              (csv[0] == csv[1] ? "identical" : "different")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
      {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", ac10}};
  std::set<std::string> wanted(argv + 1, argv + argc);
  for (const auto& w : wanted)
    if (std::none_of(criteria.begin(), criteria.end(), [&](const auto& c) { return c.first == w; })) {
      std::cerr << "unknown criterion " << w << '\n';
      return 2;
    }

  int failed = 0;
  for (const auto& [id, fn] : criteria) {
    if (!wanted.empty() && !wanted.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << id << (id.size() < 4 ? "  " : " ") << (v.pass ? "PASS" : "FAIL") << "  " << v.detail
              << " [" << fmt("%.1f", secs) << "s]" << std::endl;
    if (!v.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
