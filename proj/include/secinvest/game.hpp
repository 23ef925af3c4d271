#pragma once

// Two-player zero-sum matrix games. Rows are defender actions, columns are
// attacker targets, entries are the defender's loss. The defender minimizes,
// the attacker maximizes.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "secinvest/error.hpp"

namespace secinvest {

inline constexpr std::size_t kMaxGameRows = 10'000;
inline constexpr std::size_t kMaxGameCols = 64;
inline constexpr double kDefaultGameTolerance = 1e-9;

class LossMatrix {
 public:
  LossMatrix() = default;
  LossMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  LossMatrix(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;

  // Copy keeping only the listed rows (labels follow).
  LossMatrix select_rows(std::span<const std::size_t> keep) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct Equilibrium {
  std::vector<double> defender;  // Phi, over rows
  std::vector<double> attacker;  // Theta, over columns
  double value = 0.0;            // defender's guaranteed loss ceiling
  double duality_gap = 0.0;      // ceiling - attacker's guaranteed floor
};

class SolverError : public Error {
 public:
  SolverError(const std::string& what, Equilibrium incumbent)
      : Error(what), incumbent_(std::move(incumbent)) {}
  const Equilibrium& incumbent() const { return incumbent_; }
  double gap() const { return incumbent_.duality_gap; }

 private:
  Equilibrium incumbent_;
};

// Exact minimax via the simplex method. The returned duality gap is computed
// from the strategies against the original matrix:
//   ceiling = max_j (Phi A)_j,  floor = min_i (A Theta)_i.
// Throws InputError on non-finite entries, SizingError above
// kMaxGameRows x kMaxGameCols, SolverError if the gap exceeds `tolerance`.
Equilibrium solve_zero_sum(const LossMatrix& m, double tolerance = kDefaultGameTolerance);

// Expected loss Phi A Theta.
double expected_loss(const LossMatrix& m, std::span<const double> phi, std::span<const double> theta);

// ---- equilibrium certification ----------------------------------------------

enum class Player { Defender, Attacker };

struct Deviation {
  Player player = Player::Defender;
  std::size_t action = 0;  // row for the defender, column for the attacker
  double gain = 0.0;       // improvement over the current payoff
};

struct EquilibriumCheck {
  bool ok = true;
  double defender_regret = 0.0;
  double attacker_regret = 0.0;
  std::optional<Deviation> witness;  // most profitable violating deviation
};

// Zero-sum check: no pure row lowers the loss by more than eps and no pure
// column raises it by more than eps.
EquilibriumCheck verify_epsilon_equilibrium(const LossMatrix& m, std::span<const double> phi,
                                            std::span<const double> theta, double eps);

// Bimatrix check: the defender minimizes `defender_loss`, the attacker
// maximizes `attacker_payoff`.
EquilibriumCheck verify_bimatrix_equilibrium(const LossMatrix& defender_loss,
                                             const LossMatrix& attacker_payoff,
                                             std::span<const double> phi,
                                             std::span<const double> theta, double eps);

// ---- closed form for 2x2 control games --------------------------------------

// Differences between two levels l (row 0) and l' (row 1) and two targets
// t (column 0) and t' (column 1), oriented as reductions:
//   dS_t   = S(l,t)   - S(l',t)    damage removed at t by moving to l'
//   dS_tp  = S(l,t')  - S(l',t')
//   dS_l   = S(l,t)   - S(l,t')    attacker's preference for t under l
//   dS_lp  = S(l',t)  - S(l',t')   attacker's preference for t under l'
//   dC     = C(l') - C(l)
struct ControlGameDeltas {
  double dS_t = 0.0;
  double dS_tp = 0.0;
  double dS_l = 0.0;
  double dS_lp = 0.0;
  double dC = 0.0;
};

enum class TwoByTwoKind { Pure, Mixed, Degenerate };

struct TwoByTwoOutcome {
  TwoByTwoKind kind = TwoByTwoKind::Pure;
  double phi = 0.0;    // probability of level l
  double theta = 0.0;  // probability of target t
  double value = 0.0;  // expected loss at (phi, theta)
  ControlGameDeltas deltas;

  Equilibrium as_equilibrium() const;
};

// Inputs are damages S(row level, column target) and indirect costs C(l), C(l').
TwoByTwoOutcome analytic_2x2(double s_lt, double s_ltp, double s_lpt, double s_lptp, double c_l,
                             double c_lp);

// ---- affine reductions of non-zero-sum variants ------------------------------

struct AffineTransform {
  double scale = -1.0;  // omega (negative) for the attacker transform
  double offset = 0.0;  // psi, the entry of a constant matrix
};

struct BimatrixGame {
  LossMatrix defender_loss;
  LossMatrix attacker_payoff;
};

struct AffineAttackerCheck {
  BimatrixGame game;
  Equilibrium zero_sum;  // equilibrium of the original game
  EquilibriumCheck check;
};

// The attacker's gain is a negative affine transform of the defender's payoff
// (= -loss): attacker_payoff = scale * (-loss) + offset. Certifies that the
// zero-sum equilibrium remains an eps-equilibrium of the transformed pair.
AffineAttackerCheck apply_affine_attacker(const LossMatrix& loss, const AffineTransform& t,
                                          double eps = 1e-8);

struct AffineIndirectCheck {
  Equilibrium base;         // loss matrix S
  Equilibrium transformed;  // loss matrix S + (kappa S - mu)
  bool same_support = false;
  bool value_consistent = false;
  EquilibriumCheck base_in_transformed;
  EquilibriumCheck transformed_in_base;
  bool ok() const {
    return same_support && value_consistent && base_in_transformed.ok && transformed_in_base.ok;
  }
};

// Indirect cost as a positive affine transform of the damage, C = kappa S - mu.
// Solves both games and checks that the defender's maxmin strategy carries
// over. Requires kappa > 0 and kappa != 1.
AffineIndirectCheck apply_affine_indirect(const LossMatrix& damage, double kappa, double mu,
                                          double eps = 1e-8);

// ---- dominance ----------------------------------------------------------------

// Indices of rows that survive removal of weakly dominated rows. Row q
// dominates row r when q's losses are <= r's everywhere, cost[q] <= cost[r]
// (when `cost` is non-empty), and q is strictly better somewhere; rows that
// tie on every loss and cost keep only the preferred one (the higher index
// when `prefer_later`, the lower index otherwise). Survivors are returned in
// increasing order. Removing such rows never changes the game value.
std::vector<std::size_t> undominated_rows(const LossMatrix& m, std::span<const double> cost,
                                          bool prefer_later);

}  // namespace secinvest
