#pragma once

#include <algorithm>
#include <vector>

#include "normlab/rational.hpp"

namespace normlab {

enum class Rel { le, ge, eq };
enum class LpStatus { optimal, infeasible, unbounded };

/// Linear program over nonnegative variables:
///   optimize c.x  subject to  A x (<=|=|>=) b,  x >= 0.
/// Callers encode free variables by sign-splitting.
template <class R>
struct LpProblem {
  int num_vars = 0;
  std::vector<std::vector<R>> rows;
  std::vector<Rel> rels;
  std::vector<R> rhs;
  std::vector<R> objective;
  bool maximize = true;

  explicit LpProblem(int vars)
      : num_vars(vars), objective(static_cast<std::size_t>(vars), scalar_traits<R>::zero()) {}

  void add_row(std::vector<R> coeffs, Rel rel, R b) {
    if (static_cast<int>(coeffs.size()) != num_vars)
      throw PreconditionError("lp row width mismatch");
    rows.push_back(std::move(coeffs));
    rels.push_back(rel);
    rhs.push_back(std::move(b));
  }
};

template <class R>
struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  R value = scalar_traits<R>::zero();
  std::vector<R> x;
};

/// Dense two-phase simplex. Pivoting is exact for R = Rat; the double
/// instantiation uses a fixed small tolerance. The pivot rule is most
/// negative reduced cost, falling back to Bland's rule after a run of
/// degenerate steps so cycling cannot occur.
template <class R>
class SimplexSolver {
  using T = scalar_traits<R>;

 public:
  explicit SimplexSolver(const LpProblem<R>& p) : prob_(p) {}

  LpSolution<R> solve() {
    build_tableau();
    if (!phase_one()) return {LpStatus::infeasible, T::zero(), {}};
    const LpStatus st = phase_two();
    LpSolution<R> out;
    out.status = st;
    if (st == LpStatus::optimal) {
      out.x.assign(static_cast<std::size_t>(prob_.num_vars), T::zero());
      for (std::size_t i = 0; i < basis_.size(); ++i)
        if (basis_[i] < prob_.num_vars)
          out.x[static_cast<std::size_t>(basis_[i])] = tab_[i].back();
      out.value = T::zero();
      for (int j = 0; j < prob_.num_vars; ++j)
        out.value += prob_.objective[static_cast<std::size_t>(j)] *
                     out.x[static_cast<std::size_t>(j)];
    }
    return out;
  }

 private:
  static constexpr int kDegenerateLimit = 64;
  static constexpr long kMaxIterations = 500000;

  bool neg(const R& a) const {
    if constexpr (T::exact) return sgn(a) < 0;
    else return a < -float_tolerance().load();
  }
  bool pos(const R& a) const {
    if constexpr (T::exact) return sgn(a) > 0;
    else return a > float_tolerance().load();
  }
  bool zero(const R& a) const { return !neg(a) && !pos(a); }

  void build_tableau() {
    const int m = static_cast<int>(prob_.rows.size());
    // Column layout: structural | slack/surplus | artificial.
    int extra = 0;
    for (Rel r : prob_.rels) extra += (r == Rel::eq) ? 0 : 1;
    int artificials = 0;
    for (Rel r : prob_.rels) artificials += (r == Rel::le) ? 0 : 1;
    first_artificial_ = prob_.num_vars + extra;
    total_cols_ = first_artificial_ + artificials;

    tab_.assign(static_cast<std::size_t>(m),
                std::vector<R>(static_cast<std::size_t>(total_cols_) + 1, T::zero()));
    basis_.assign(static_cast<std::size_t>(m), -1);

    int slack_at = prob_.num_vars;
    int art_at = first_artificial_;
    for (int i = 0; i < m; ++i) {
      auto row = prob_.rows[static_cast<std::size_t>(i)];
      R b = prob_.rhs[static_cast<std::size_t>(i)];
      Rel rel = prob_.rels[static_cast<std::size_t>(i)];
      if (neg(b)) {
        for (auto& v : row) v = -v;
        b = -b;
        rel = (rel == Rel::le) ? Rel::ge : (rel == Rel::ge ? Rel::le : Rel::eq);
      }
      auto& trow = tab_[static_cast<std::size_t>(i)];
      for (int j = 0; j < prob_.num_vars; ++j)
        trow[static_cast<std::size_t>(j)] = row[static_cast<std::size_t>(j)];
      trow.back() = b;
      switch (rel) {
        case Rel::le:
          trow[static_cast<std::size_t>(slack_at)] = T::one();
          basis_[static_cast<std::size_t>(i)] = slack_at++;
          break;
        case Rel::ge:
          trow[static_cast<std::size_t>(slack_at++)] = -T::one();
          trow[static_cast<std::size_t>(art_at)] = T::one();
          basis_[static_cast<std::size_t>(i)] = art_at++;
          break;
        case Rel::eq:
          trow[static_cast<std::size_t>(art_at)] = T::one();
          basis_[static_cast<std::size_t>(i)] = art_at++;
          break;
      }
    }
  }

  /// Reduced-cost row for minimizing `cost` over the current basis.
  std::vector<R> reduced_costs(const std::vector<R>& cost) const {
    std::vector<R> red = cost;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const R cb = cost[static_cast<std::size_t>(basis_[i])];
      if (zero(cb)) continue;
      for (int j = 0; j <= total_cols_; ++j)
        red[static_cast<std::size_t>(j)] -= cb * tab_[i][static_cast<std::size_t>(j)];
    }
    return red;
  }

  void pivot(int row, int col) {
    auto& prow = tab_[static_cast<std::size_t>(row)];
    const R inv = T::one() / prow[static_cast<std::size_t>(col)];
    for (auto& v : prow) v *= inv;
    for (std::size_t i = 0; i < tab_.size(); ++i) {
      if (static_cast<int>(i) == row) continue;
      const R factor = tab_[i][static_cast<std::size_t>(col)];
      if (zero(factor)) continue;
      for (int j = 0; j <= total_cols_; ++j)
        tab_[i][static_cast<std::size_t>(j)] -= factor * prow[static_cast<std::size_t>(j)];
      tab_[i][static_cast<std::size_t>(col)] = T::zero();
    }
    basis_[static_cast<std::size_t>(row)] = col;
  }

  /// Minimizes `cost` from the current basis; columns >= ban_from never
  /// enter. Returns false on unboundedness.
  bool run_simplex(const std::vector<R>& cost, int ban_from) {
    std::vector<R> red = reduced_costs(cost);
    int degenerate_run = 0;
    bool bland = false;
    for (long iter = 0; iter < kMaxIterations; ++iter) {
      int enter = -1;
      if (bland) {
        for (int j = 0; j < ban_from; ++j)
          if (neg(red[static_cast<std::size_t>(j)])) {
            enter = j;
            break;
          }
      } else {
        int best_j = -1;
        for (int j = 0; j < ban_from; ++j) {
          const R& rj = red[static_cast<std::size_t>(j)];
          if (!neg(rj)) continue;
          if (best_j < 0 || rj < red[static_cast<std::size_t>(best_j)]) best_j = j;
        }
        enter = best_j;
      }
      if (enter < 0) return true;  // optimal

      int leave = -1;
      R best_ratio = T::zero();
      for (std::size_t i = 0; i < tab_.size(); ++i) {
        const R& a = tab_[i][static_cast<std::size_t>(enter)];
        if (!pos(a)) continue;
        const R ratio = tab_[i].back() / a;
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[static_cast<std::size_t>(leave)])) {
          leave = static_cast<int>(i);
          best_ratio = ratio;
        }
      }
      if (leave < 0) return false;  // unbounded

      const bool degenerate = zero(best_ratio);
      pivot(leave, enter);
      // Incremental reduced-cost update against the normalized pivot row.
      const R mult = red[static_cast<std::size_t>(enter)];
      const auto& prow = tab_[static_cast<std::size_t>(leave)];
      for (int j = 0; j <= total_cols_; ++j)
        red[static_cast<std::size_t>(j)] -= mult * prow[static_cast<std::size_t>(j)];
      red[static_cast<std::size_t>(enter)] = T::zero();

      if (degenerate) {
        if (++degenerate_run >= kDegenerateLimit) bland = true;
      } else {
        degenerate_run = 0;
      }
    }
    throw Error("simplex iteration limit exceeded");
  }

  bool phase_one() {
    if (first_artificial_ == total_cols_) return true;  // no artificials needed
    std::vector<R> cost(static_cast<std::size_t>(total_cols_) + 1, T::zero());
    for (int j = first_artificial_; j < total_cols_; ++j)
      cost[static_cast<std::size_t>(j)] = T::one();
    if (!run_simplex(cost, total_cols_))
      throw Error("phase-1 objective unbounded");  // impossible: bounded below by 0
    R art_sum = T::zero();
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i] >= first_artificial_) art_sum += tab_[i].back();
    if (pos(art_sum)) return false;

    // Drive still-basic artificials out; drop redundant rows.
    for (std::size_t i = 0; i < basis_.size();) {
      if (basis_[i] < first_artificial_) {
        ++i;
        continue;
      }
      int col = -1;
      for (int j = 0; j < first_artificial_; ++j)
        if (!zero(tab_[i][static_cast<std::size_t>(j)])) {
          col = j;
          break;
        }
      if (col >= 0) {
        pivot(static_cast<int>(i), col);
        ++i;
      } else {
        tab_.erase(tab_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
    return true;
  }

  LpStatus phase_two() {
    std::vector<R> cost(static_cast<std::size_t>(total_cols_) + 1, T::zero());
    for (int j = 0; j < prob_.num_vars; ++j) {
      const R& c = prob_.objective[static_cast<std::size_t>(j)];
      cost[static_cast<std::size_t>(j)] = prob_.maximize ? -c : c;
    }
    return run_simplex(cost, first_artificial_) ? LpStatus::optimal : LpStatus::unbounded;
  }

  const LpProblem<R>& prob_;
  std::vector<std::vector<R>> tab_;
  std::vector<int> basis_;
  int first_artificial_ = 0;
  int total_cols_ = 0;
};

template <class R>
LpSolution<R> solve_lp(const LpProblem<R>& p) {
  return SimplexSolver<R>(p).solve();
}

}  // namespace normlab
