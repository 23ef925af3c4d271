#include "secinvest/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "secinvest/error.hpp"

namespace secinvest::oracle {

OracleReport compare(std::string description, std::vector<double> oracle_values,
                     std::vector<double> system_values, double tolerance) {
  OracleReport r;
  r.description = std::move(description);
  r.tolerance = tolerance;
  r.pass = oracle_values.size() == system_values.size();
  for (std::size_t i = 0; r.pass && i < oracle_values.size(); ++i)
    r.abs_diff = std::max(r.abs_diff, std::abs(oracle_values[i] - system_values[i]));
  if (r.pass) r.pass = r.abs_diff <= tolerance;
  r.oracle_values = std::move(oracle_values);
  r.system_values = std::move(system_values);
  return r;
}

std::string format(const OracleReport& r) {
  char buf[96];
  std::snprintf(buf, sizeof buf, " diff=%.3g tol=%.3g", r.abs_diff, r.tolerance);
  return std::string(r.pass ? "PASS " : "FAIL ") + r.description + buf;
}

ValueBracket oracle_game_value(const LossMatrix& m, double resolution) {
  const std::size_t rows = m.rows(), cols = m.cols();
  if (rows == 0 || cols == 0) throw InputError("oracle: empty matrix");
  if (rows > 3) throw InputError("oracle: grid search supports at most 3 rows");
  if (!(resolution > 0.0 && resolution <= 1.0)) throw InputError("oracle: resolution in (0, 1]");

  const long steps = std::lround(1.0 / resolution);
  const double h = 1.0 / static_cast<double>(steps);
  auto worst = [&](double p0, double p1, double p2) {
    double w = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < cols; ++j) {
      double v = p0 * m(0, j);
      if (rows > 1) v += p1 * m(1, j);
      if (rows > 2) v += p2 * m(2, j);
      w = std::max(w, v);
    }
    return w;
  };

  double best = std::numeric_limits<double>::infinity();
  if (rows == 1) {
    best = worst(1, 0, 0);
  } else if (rows == 2) {
    for (long a = 0; a <= steps; ++a) {
      const double p = static_cast<double>(a) * h;
      best = std::min(best, worst(p, 1.0 - p, 0));
    }
  } else {
    for (long a = 0; a <= steps; ++a)
      for (long b = 0; a + b <= steps; ++b) {
        const double p0 = static_cast<double>(a) * h, p1 = static_cast<double>(b) * h;
        best = std::min(best, worst(p0, p1, 1.0 - p0 - p1));
      }
  }
  if (rows == 1) return {best, best};

  // Rounding the optimum to the grid moves at most (rows-1)h of mass in L1
  // half-norm; each column changes by at most that times its range.
  double range = 0.0;
  for (std::size_t j = 0; j < cols; ++j) {
    double lo = m(0, j), hi = m(0, j);
    for (std::size_t i = 1; i < rows; ++i) {
      lo = std::min(lo, m(i, j));
      hi = std::max(hi, m(i, j));
    }
    range = std::max(range, hi - lo);
  }
  const double slack = static_cast<double>(rows - 1) * h * range;
  return {best - slack, best};
}

namespace {

struct Evaluated {
  std::vector<int> pick;
  double objective;
  double direct;
};

}  // namespace

Solution oracle_knapsack(const ItemGroups& groups, const Scenario& s, double budget,
                         KnapsackMode mode) {
  if (groups.empty()) throw InputError("oracle: no groups");
  double combos = 1.0;
  for (const auto& g : groups) {
    if (g.empty()) throw InputError("oracle: empty group");
    combos *= static_cast<double>(g.size());
  }
  if (combos > 1e6) throw SizingError("oracle: more than 1e6 combinations");

  const std::size_t n = s.target_count();
  const double cap = 1.0 - s.residual_floor();
  std::vector<Evaluated> all;
  std::vector<int> pick(groups.size(), 0);
  for (;;) {
    double direct = 0.0, indirect = 0.0;
    std::vector<double> mit(n, 0.0);
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const Item& it = groups[g][static_cast<std::size_t>(pick[g])];
      direct += it.direct_cost;
      indirect += it.indirect_cost;
      for (std::size_t t = 0; t < n; ++t) mit[t] += it.mitigation[t];
    }
    if (direct <= budget) {
      double worst = 0.0;
      for (std::size_t t = 0; t < n; ++t) {
        const double m = std::min(cap, mit[t]);
        worst = std::max(worst, s.exposure(t) * (1.0 - m));
      }
      if (mode == KnapsackMode::Pure) worst += indirect;
      all.push_back({pick, worst, direct});
    }
    bool done = true;
    for (std::size_t g = groups.size(); g-- > 0;) {
      if (++pick[g] < static_cast<int>(groups[g].size())) {
        done = false;
        break;
      }
      pick[g] = 0;
    }
    if (done) break;
  }
  if (all.empty()) throw InputError("oracle: no feasible combination (missing null item?)");

  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : all) best = std::min(best, e.objective);
  double cheapest = std::numeric_limits<double>::infinity();
  for (const auto& e : all)
    if (e.objective <= best + 1e-9) cheapest = std::min(cheapest, e.direct);
  const Evaluated* win = nullptr;
  for (const auto& e : all) {
    if (e.objective > best + 1e-9 || e.direct > cheapest + 1e-9) continue;
    if (!win || std::lexicographical_compare(e.pick.begin(), e.pick.end(), win->pick.begin(),
                                             win->pick.end()))
      win = &e;
  }

  Solution sol;
  std::vector<double> mit(n, 0.0);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const Item& it = groups[g][static_cast<std::size_t>(win->pick[g])];
    sol.chosen.push_back(it);
    sol.total_direct_cost += it.direct_cost;
    sol.total_indirect_cost += it.indirect_cost;
    for (std::size_t t = 0; t < n; ++t) mit[t] += it.mitigation[t];
  }
  for (std::size_t t = 0; t < n; ++t)
    sol.worst_target_damage =
        std::max(sol.worst_target_damage, s.exposure(t) * (1.0 - std::min(cap, mit[t])));
  sol.objective = win->objective;
  return sol;
}

bool is_weakly_dominated(const LossMatrix& m, std::span<const double> cost, std::size_t r) {
  for (std::size_t q = 0; q < m.rows(); ++q) {
    if (q == r) continue;
    if (!cost.empty() && cost[q] > cost[r]) continue;
    bool le = true, lt = !cost.empty() && cost[q] < cost[r];
    for (std::size_t j = 0; j < m.cols() && le; ++j) {
      if (m(q, j) > m(r, j)) le = false;
      if (m(q, j) < m(r, j)) lt = true;
    }
    if (le && lt) return true;
  }
  return false;
}

Scenario random_scenario(std::uint64_t seed, RandomSizes sizes, RandomFlags flags) {
  if (sizes.controls < 1 || sizes.controls > 5 || sizes.max_levels < 1 || sizes.max_levels > 6 ||
      sizes.targets < 1 || sizes.targets > 8)
    throw InputError("random_scenario: sizes out of range");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> factor(1, 3);

  ScenarioData d;
  d.name = "random-" + std::to_string(seed);
  const int depth_count = std::min(sizes.targets, 2);
  for (int k = 0; k < depth_count; ++k) d.depths.push_back({k + 1, 1.0 + 19.0 * unit(rng)});
  for (int t = 0; t < sizes.targets; ++t) {
    Vulnerability v;
    v.id = t + 1;
    v.cwe = 100 + t;
    v.threat = 0.05 + 0.95 * unit(rng);
    v.factors = {factor(rng), factor(rng), factor(rng), factor(rng)};
    v.repair_cost = 1.0 + 4.0 * unit(rng);
    v.category = static_cast<Category>(t % 3);
    d.vulnerabilities.push_back(v);
    d.targets.push_back({v.id, 1 + t % depth_count});
  }

  std::uniform_int_distribution<int> level_count(1, sizes.max_levels);
  for (int j = 0; j < sizes.controls; ++j) {
    Control c;
    c.id = j + 1;
    c.name = "control-" + std::to_string(j + 1);
    c.covers = {static_cast<Category>(j % 3)};
    const int levels = level_count(rng);
    std::vector<bool> hit(static_cast<std::size_t>(sizes.targets));
    for (auto&& h : hit) h = unit(rng) < 0.7;
    std::vector<double> reach(hit.size());
    for (auto& r : reach) r = 0.3 + 0.65 * unit(rng);

    double direct = 0.0, indirect = 0.0;
    for (int l = 0; l <= levels; ++l) {
      ControlLevel lv;
      lv.index = l;
      if (l > 0) {
        direct += 0.5 + 3.0 * unit(rng);
        if (!flags.zero_indirect) indirect += 2.0 * unit(rng);
      }
      lv.direct_cost = direct;
      lv.indirect_cost = indirect;
      for (std::size_t t = 0; t < hit.size(); ++t) {
        double e = 0.0;
        if (l > 0 && hit[t])
          e = flags.monotone_efficacy ? reach[t] * static_cast<double>(l) / levels
                                      : 0.9 * unit(rng);
        lv.efficacy.push_back(e);
      }
      c.levels.push_back(std::move(lv));
    }
    d.controls.push_back(std::move(c));
  }
  return Scenario(std::move(d));
}

LossMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double lo,
                         double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  LossMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = u(rng);
  return m;
}

}  // namespace secinvest::oracle
