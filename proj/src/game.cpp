#include "secinvest/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace secinvest {

LossMatrix::LossMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

LossMatrix::LossMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InputError("LossMatrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

LossMatrix LossMatrix::select_rows(std::span<const std::size_t> keep) const {
  LossMatrix out(keep.size(), cols_);
  for (std::size_t k = 0; k < keep.size(); ++k) {
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(keep[k] * cols_), cols_,
                out.data_.begin() + static_cast<std::ptrdiff_t>(k * cols_));
    if (keep[k] < row_labels.size()) out.row_labels.push_back(row_labels[keep[k]]);
  }
  out.col_labels = col_labels;
  return out;
}

double expected_loss(const LossMatrix& m, std::span<const double> phi,
                     std::span<const double> theta) {
  double total = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (phi[i] == 0.0) continue;
    double r = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) r += m(i, j) * theta[j];
    total += phi[i] * r;
  }
  return total;
}

namespace {

using Real = long double;

// Dense tableau simplex for  max sum(x)  s.t.  A'^T x <= 1, x >= 0,
// where A' = A - min(A) + 1 has strictly positive entries. The optimal x
// scaled to sum one is the defender's minimax strategy; the duals of the n
// constraints, scaled likewise, are the attacker's.
class MinimaxSimplex {
 public:
  explicit MinimaxSimplex(const LossMatrix& a) : m_(a.rows()), n_(a.cols()) {
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < n_; ++j) lo = std::min(lo, a(i, j));
    shift_ = 1.0L - static_cast<Real>(lo);
    width_ = m_ + n_ + 1;
    tab_.assign((n_ + 1) * width_, 0.0L);
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t i = 0; i < m_; ++i) at(j, i) = static_cast<Real>(a(i, j)) + shift_;
      at(j, m_ + j) = 1.0L;
      at(j, width_ - 1) = 1.0L;
      basis_.push_back(m_ + j);
    }
    for (std::size_t i = 0; i < m_; ++i) at(n_, i) = -1.0L;
  }

  // Returns false if the iteration cap was hit.
  bool run() {
    const std::size_t cap = 50 * (m_ + n_) + 1000;
    std::size_t stalled = 0;
    Real last_obj = -1.0L;
    for (std::size_t iter = 0; iter < cap; ++iter) {
      const bool bland = stalled > 50;
      std::size_t enter = width_;
      Real best = -kEps;
      for (std::size_t c = 0; c + 1 < width_; ++c) {
        const Real rc = at(n_, c);
        if (rc < best) {
          enter = c;
          if (bland) break;
          best = rc;
        }
      }
      if (enter == width_) return true;

      std::size_t leave = n_;
      Real ratio = std::numeric_limits<Real>::infinity();
      for (std::size_t r = 0; r < n_; ++r) {
        const Real coef = at(r, enter);
        if (coef <= kEps) continue;
        const Real q = at(r, width_ - 1) / coef;
        if (q < ratio - kEps || (q <= ratio + kEps && leave < n_ && basis_[r] < basis_[leave])) {
          ratio = std::min(ratio, q);
          leave = r;
        }
      }
      // Bounded by construction; no entering column can be unbounded.
      if (leave == n_) return false;
      pivot(leave, enter);

      const Real obj = at(n_, width_ - 1);
      stalled = (obj > last_obj + kEps) ? 0 : stalled + 1;
      last_obj = std::max(last_obj, obj);
    }
    return false;
  }

  std::vector<double> defender() const {
    std::vector<Real> x(m_, 0.0L);
    for (std::size_t r = 0; r < n_; ++r)
      if (basis_[r] < m_) x[basis_[r]] = at(r, width_ - 1);
    return normalize(x);
  }

  std::vector<double> attacker() const {
    std::vector<Real> y(n_, 0.0L);
    for (std::size_t j = 0; j < n_; ++j) y[j] = at(n_, m_ + j);
    return normalize(y);
  }

 private:
  static constexpr Real kEps = 1e-15L;

  Real& at(std::size_t r, std::size_t c) { return tab_[r * width_ + c]; }
  Real at(std::size_t r, std::size_t c) const { return tab_[r * width_ + c]; }

  void pivot(std::size_t pr, std::size_t pc) {
    const Real inv = 1.0L / at(pr, pc);
    Real* prow = &tab_[pr * width_];
    for (std::size_t c = 0; c < width_; ++c) prow[c] *= inv;
    prow[pc] = 1.0L;
    for (std::size_t r = 0; r <= n_; ++r) {
      if (r == pr) continue;
      Real* row = &tab_[r * width_];
      const Real f = row[pc];
      if (f == 0.0L) continue;
      for (std::size_t c = 0; c < width_; ++c) row[c] -= f * prow[c];
      row[pc] = 0.0L;
    }
    basis_[pr] = pc;
  }

  static std::vector<double> normalize(std::vector<Real>& v) {
    Real sum = 0.0L;
    for (auto& e : v) {
      if (e < 0.0L) e = 0.0L;
      sum += e;
    }
    std::vector<double> out(v.size(), 0.0);
    if (sum <= 0.0L) {
      out[0] = 1.0;
      return out;
    }
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = static_cast<double>(v[i] / sum);
    return out;
  }

  std::size_t m_, n_, width_;
  Real shift_ = 0.0L;
  std::vector<Real> tab_;
  std::vector<std::size_t> basis_;
};

// Entries below 1e-12 are dropped and the remainder renormalized.
void clean_strategy(std::vector<double>& p) {
  double sum = 0.0;
  for (auto& e : p) {
    if (e < 1e-12) e = 0.0;
    sum += e;
  }
  for (auto& e : p) e /= sum;
}

double row_ceiling(const LossMatrix& m, std::span<const double> phi) {
  double ceiling = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double v = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (phi[i] != 0.0) v += phi[i] * m(i, j);
    ceiling = std::max(ceiling, v);
  }
  return ceiling;
}

double column_floor(const LossMatrix& m, std::span<const double> theta) {
  double floor = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double v = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) v += m(i, j) * theta[j];
    floor = std::min(floor, v);
  }
  return floor;
}

void check_finite(const LossMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!std::isfinite(m(i, j)))
        throw InputError("loss matrix entry (" + std::to_string(i) + "," + std::to_string(j) +
                         ") is not finite");
}

}  // namespace

Equilibrium solve_zero_sum(const LossMatrix& m, double tolerance) {
  if (m.rows() == 0 || m.cols() == 0) throw InputError("loss matrix must be at least 1x1");
  if (!(tolerance > 0.0)) throw InputError("solver tolerance must be positive");
  if (m.rows() > kMaxGameRows || m.cols() > kMaxGameCols)
    throw SizingError("game of " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                      " exceeds the supported " + std::to_string(kMaxGameRows) + "x" +
                      std::to_string(kMaxGameCols));
  check_finite(m);

  MinimaxSimplex lp(m);
  const bool converged = lp.run();

  Equilibrium eq;
  eq.defender = lp.defender();
  eq.attacker = lp.attacker();
  clean_strategy(eq.defender);
  clean_strategy(eq.attacker);
  const double ceiling = row_ceiling(m, eq.defender);
  const double floor = column_floor(m, eq.attacker);
  eq.value = ceiling;
  eq.duality_gap = std::max(0.0, ceiling - floor);

  if (!converged)
    throw SolverError("simplex hit its iteration cap", std::move(eq));
  if (eq.duality_gap > tolerance)
    throw SolverError("duality gap " + std::to_string(eq.duality_gap) + " exceeds tolerance",
                      std::move(eq));
  return eq;
}

// ---- certification -------------------------------------------------------------

EquilibriumCheck verify_bimatrix_equilibrium(const LossMatrix& defender_loss,
                                             const LossMatrix& attacker_payoff,
                                             std::span<const double> phi,
                                             std::span<const double> theta, double eps) {
  const auto& a = defender_loss;
  const auto& b = attacker_payoff;
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InputError("bimatrix payoff dimensions differ");
  if (phi.size() != a.rows() || theta.size() != a.cols())
    throw InputError("strategy dimensions do not match the matrix (" +
                     std::to_string(phi.size()) + "x" + std::to_string(theta.size()) + " vs " +
                     std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + ")");

  EquilibriumCheck out;
  const double loss_now = expected_loss(a, phi, theta);
  std::size_t best_row = 0;
  double best_row_loss = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double v = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) v += a(i, j) * theta[j];
    if (v < best_row_loss) {
      best_row_loss = v;
      best_row = i;
    }
  }
  out.defender_regret = std::max(0.0, loss_now - best_row_loss);

  const double payoff_now = expected_loss(b, phi, theta);
  std::size_t best_col = 0;
  double best_col_payoff = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < b.cols(); ++j) {
    double v = 0.0;
    for (std::size_t i = 0; i < b.rows(); ++i)
      if (phi[i] != 0.0) v += phi[i] * b(i, j);
    if (v > best_col_payoff) {
      best_col_payoff = v;
      best_col = j;
    }
  }
  out.attacker_regret = std::max(0.0, best_col_payoff - payoff_now);

  out.ok = out.defender_regret <= eps && out.attacker_regret <= eps;
  if (!out.ok) {
    if (out.attacker_regret >= out.defender_regret)
      out.witness = Deviation{Player::Attacker, best_col, out.attacker_regret};
    else
      out.witness = Deviation{Player::Defender, best_row, out.defender_regret};
  }
  return out;
}

EquilibriumCheck verify_epsilon_equilibrium(const LossMatrix& m, std::span<const double> phi,
                                            std::span<const double> theta, double eps) {
  return verify_bimatrix_equilibrium(m, m, phi, theta, eps);
}

// ---- closed-form 2x2 -------------------------------------------------------------

Equilibrium TwoByTwoOutcome::as_equilibrium() const {
  Equilibrium eq;
  eq.defender = {phi, 1.0 - phi};
  eq.attacker = {theta, 1.0 - theta};
  eq.value = value;
  return eq;
}

TwoByTwoOutcome analytic_2x2(double s_lt, double s_ltp, double s_lpt, double s_lptp, double c_l,
                             double c_lp) {
  for (double v : {s_lt, s_ltp, s_lpt, s_lptp, c_l, c_lp})
    if (!std::isfinite(v)) throw InputError("analytic_2x2: non-finite input");

  TwoByTwoOutcome out;
  auto& d = out.deltas;
  d.dS_t = s_lt - s_lpt;
  d.dS_tp = s_ltp - s_lptp;
  d.dS_l = s_lt - s_ltp;
  d.dS_lp = s_lpt - s_lptp;
  d.dC = c_lp - c_l;

  const double loss[2][2] = {{s_lt + c_l, s_ltp + c_l}, {s_lpt + c_lp, s_lptp + c_lp}};
  auto value_at = [&](double phi, double theta) {
    const double p[2] = {phi, 1.0 - phi};
    const double q[2] = {theta, 1.0 - theta};
    double v = 0.0;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) v += p[r] * q[c] * loss[r][c];
    return v;
  };

  const double scale = std::max({1.0, std::abs(s_lt), std::abs(s_ltp), std::abs(s_lpt),
                                 std::abs(s_lptp)});
  if (std::abs(d.dS_l - d.dS_lp) <= 1e-12 * scale) {
    // Columns differ by a constant: the attacker's preference does not depend
    // on the level, and the mixing formula is undefined. Play the row with
    // the smaller worst-case loss (ties to l), attacked at its worst target.
    out.kind = TwoByTwoKind::Degenerate;
    const double worst_l = std::max(loss[0][0], loss[0][1]);
    const double worst_lp = std::max(loss[1][0], loss[1][1]);
    const int row = worst_lp < worst_l ? 1 : 0;
    out.phi = row == 0 ? 1.0 : 0.0;
    out.theta = loss[row][0] >= loss[row][1] ? 1.0 : 0.0;
    out.value = value_at(out.phi, out.theta);
    return out;
  }

  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const bool row_best = loss[r][c] <= loss[1 - r][c];
      const bool col_best = loss[r][c] >= loss[r][1 - c];
      if (row_best && col_best) {
        out.kind = TwoByTwoKind::Pure;
        out.phi = r == 0 ? 1.0 : 0.0;
        out.theta = c == 0 ? 1.0 : 0.0;
        out.value = loss[r][c];
        return out;
      }
    }
  }

  out.kind = TwoByTwoKind::Mixed;
  const double denom = d.dS_lp - d.dS_l;
  out.phi = std::clamp(d.dS_lp / denom, 0.0, 1.0);
  out.theta = std::clamp((d.dS_t - d.dC + d.dS_lp - d.dS_l) / denom, 0.0, 1.0);
  out.value = value_at(out.phi, out.theta);
  return out;
}

// ---- affine reductions -------------------------------------------------------------

AffineAttackerCheck apply_affine_attacker(const LossMatrix& loss, const AffineTransform& t,
                                          double eps) {
  if (!(t.scale < 0.0) || !std::isfinite(t.scale))
    throw InputError("attacker transform needs a negative finite scale");
  if (!std::isfinite(t.offset)) throw InputError("attacker transform offset must be finite");

  AffineAttackerCheck out;
  out.zero_sum = solve_zero_sum(loss);
  out.game.defender_loss = loss;
  out.game.attacker_payoff = LossMatrix(loss.rows(), loss.cols());
  for (std::size_t i = 0; i < loss.rows(); ++i)
    for (std::size_t j = 0; j < loss.cols(); ++j)
      out.game.attacker_payoff(i, j) = t.scale * (-loss(i, j)) + t.offset;
  out.check = verify_bimatrix_equilibrium(out.game.defender_loss, out.game.attacker_payoff,
                                          out.zero_sum.defender, out.zero_sum.attacker, eps);
  return out;
}

AffineIndirectCheck apply_affine_indirect(const LossMatrix& damage, double kappa, double mu,
                                          double eps) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw InputError("kappa must be positive");
  if (kappa == 1.0) throw InputError("kappa = 1 is excluded");
  if (!std::isfinite(mu)) throw InputError("mu must be finite");

  LossMatrix transformed(damage.rows(), damage.cols());
  for (std::size_t i = 0; i < damage.rows(); ++i)
    for (std::size_t j = 0; j < damage.cols(); ++j)
      transformed(i, j) = damage(i, j) + (kappa * damage(i, j) - mu);

  AffineIndirectCheck out;
  out.base = solve_zero_sum(damage);
  out.transformed = solve_zero_sum(transformed);

  out.same_support = true;
  for (std::size_t i = 0; i < damage.rows(); ++i) {
    const bool a = out.base.defender[i] > 1e-9;
    const bool b = out.transformed.defender[i] > 1e-9;
    if (a != b) out.same_support = false;
  }
  const double predicted = (1.0 + kappa) * out.base.value - mu;
  out.value_consistent = std::abs(out.transformed.value - predicted) <= eps;
  out.base_in_transformed = verify_epsilon_equilibrium(transformed, out.base.defender,
                                                       out.base.attacker, eps);
  out.transformed_in_base = verify_epsilon_equilibrium(damage, out.transformed.defender,
                                                       out.transformed.attacker, eps);
  return out;
}

// ---- dominance -------------------------------------------------------------------

std::vector<std::size_t> undominated_rows(const LossMatrix& m, std::span<const double> cost,
                                          bool prefer_later) {
  const std::size_t rows = m.rows();
  const bool use_cost = !cost.empty();
  if (use_cost && cost.size() != rows) throw InputError("cost vector length must match rows");

  std::vector<double> sums(rows, 0.0);
  for (std::size_t i = 0; i < rows; ++i)
    for (double v : m.row(i)) sums[i] += v;

  // rank: preferred row among identical ones has the smaller rank
  auto rank = [&](std::size_t i) { return prefer_later ? rows - 1 - i : i; };

  auto dominates = [&](std::size_t q, std::size_t r) {
    bool strict = false;
    if (use_cost) {
      if (cost[q] > cost[r]) return false;
      strict = cost[q] < cost[r];
    }
    const auto a = m.row(q);
    const auto b = m.row(r);
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (a[j] > b[j]) return false;
      if (a[j] < b[j]) strict = true;
    }
    return strict || rank(q) < rank(r);
  };

  std::vector<std::size_t> order(rows);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (sums[a] != sums[b]) return sums[a] < sums[b];
    if (use_cost && cost[a] != cost[b]) return cost[a] < cost[b];
    return rank(a) < rank(b);
  });

  std::vector<std::size_t> survivors;
  for (std::size_t r : order) {
    bool dominated = false;
    for (std::size_t q : survivors) {
      if (dominates(q, r)) {
        dominated = true;
        break;
      }
    }
    if (dominated) continue;
    std::erase_if(survivors, [&](std::size_t q) { return dominates(r, q); });
    survivors.push_back(r);
  }
  std::sort(survivors.begin(), survivors.end());
  return survivors;
}

}  // namespace secinvest
