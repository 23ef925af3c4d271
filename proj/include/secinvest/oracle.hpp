#pragma once

// Brute-force reference implementations used to check the solvers. Nothing
// here calls into the game or knapsack solvers; only the data types and the
// Scenario container are shared.

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "secinvest/game.hpp"
#include "secinvest/knapsack.hpp"
#include "secinvest/model.hpp"

namespace secinvest::oracle {

struct OracleReport {
  std::string description;
  std::vector<double> oracle_values;
  std::vector<double> system_values;
  double abs_diff = 0;
  double tolerance = 0;
  bool pass = false;
};

// Compares elementwise; abs_diff is the largest gap.
OracleReport compare(std::string description, std::vector<double> oracle_values,
                     std::vector<double> system_values, double tolerance);

std::string format(const OracleReport& r);

struct ValueBracket {
  double lower = 0;
  double upper = 0;
  bool contains(double v, double slack = 0.0) const {
    return v >= lower - slack && v <= upper + slack;
  }
};

// Grid search over the defender simplex with step `resolution`. `upper` is
// the best grid point's worst-column loss; `lower` subtracts the largest
// possible improvement inside one grid cell. Supports at most 3 rows.
ValueBracket oracle_game_value(const LossMatrix& m, double resolution);

// Exhaustive enumeration of every item combination. Same objective and
// tie-break rules as the production solver, written independently.
// Throws SizingError when the product of group sizes exceeds 1e6.
Solution oracle_knapsack(const ItemGroups& groups, const Scenario& s, double budget,
                         KnapsackMode mode);

// True when some other row weakly dominates row r (losses <= everywhere,
// cost <= when given, strictly better somewhere).
bool is_weakly_dominated(const LossMatrix& m, std::span<const double> cost, std::size_t r);

struct RandomSizes {
  int controls = 3;    // <= 5
  int max_levels = 3;  // <= 6, excluding level 0
  int targets = 4;     // <= 8
};

struct RandomFlags {
  bool zero_indirect = false;
  bool monotone_efficacy = false;
};

// Seeded scenario satisfying every model invariant.
Scenario random_scenario(std::uint64_t seed, RandomSizes sizes = {}, RandomFlags flags = {});

// Uniform entries in [lo, hi].
LossMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double lo = -10,
                         double hi = 10);

}  // namespace secinvest::oracle
