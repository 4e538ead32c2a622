#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "normlab/simplex.hpp"
#include "normlab/sum_norm.hpp"

namespace normlab {

/// The dual unit ball as a Minkowski sum: the l1 cross-polytope of radius
/// cross_radius plus the segments r_n [-v_n, v_n]. Its support function
/// at x reproduces the primal norm exactly.
template <class R>
struct DualBallRep {
  R cross_radius = scalar_traits<R>::one();
  std::vector<std::pair<R, Vec<R>>> segments;
  int dim = 0;

  static DualBallRep from_spec(const SumNormSpec<R>& spec) {
    DualBallRep rep;
    rep.dim = spec.dim;
    rep.segments.reserve(spec.rows.size());
    for (std::size_t n = 0; n < spec.rows.size(); ++n)
      rep.segments.emplace_back(spec.r[n], spec.rows[n]);
    return rep;
  }
};

/// Membership witness for the dual unit ball: f = f0 + sum_n s_n r_n v_n
/// with ||f0||_1 <= 1 and |s_n| <= 1.
template <class R>
struct Decomposition {
  Vec<R> f0;
  std::vector<R> s;
  bool residual_check = false;
};

template <class R>
Vec<R> assemble(const DualBallRep<R>& rep, const Decomposition<R>& dec) {
  Vec<R> f = dec.f0;
  for (std::size_t n = 0; n < rep.segments.size(); ++n)
    f.axpy(dec.s[n] * rep.segments[n].first, rep.segments[n].second);
  return f;
}

/// Closed-form support function of the dual ball:
///   h(x) = cross_radius ||x||_sup + sum_n r_n |<v_n, x>|.
/// Independent code path from p_norm; the two must agree exactly.
template <class R>
R support_function(const DualBallRep<R>& rep, const Vec<R>& x) {
  using T = scalar_traits<R>;
  if (x.dim() != rep.dim) throw DimensionMismatch("support_function: dimension mismatch");
  R out = rep.cross_radius * sup_norm(x);
  for (const auto& [weight, direction] : rep.segments)
    out += weight * T::abs(pairing(direction, x));
  return out;
}

/// Dual norm as the gauge of the Minkowski-sum ball, solved as an exact
/// linear program:  min t  s.t.  f = g + sum s_n r_n v_n, ||g||_1 <= t,
/// |s_n| <= t.  Returns the optimum and a decomposition of f/t as a
/// unit-ball membership witness.
template <class R>
std::pair<R, Decomposition<R>> dual_norm_gauge(const DualBallRep<R>& rep, const Vec<R>& f) {
  using T = scalar_traits<R>;
  if (f.dim() != rep.dim) throw DimensionMismatch("dual_norm_gauge: dimension mismatch");
  const int N = rep.dim;
  const int M = static_cast<int>(rep.segments.size());
  Decomposition<R> dec;
  dec.f0 = Vec<R>(N);
  dec.s.assign(static_cast<std::size_t>(M), T::zero());
  if (f.is_zero()) {
    dec.residual_check = true;
    return {T::zero(), dec};
  }

  // Variables: gp(N) gm(N) sp(M) sm(M) t.
  const int gp = 0, gm = N, sp = 2 * N, sm = 2 * N + M, tv = 2 * N + 2 * M;
  LpProblem<R> lp(2 * N + 2 * M + 1);
  lp.maximize = false;
  lp.objective[static_cast<std::size_t>(tv)] = T::one();

  for (int i = 1; i <= N; ++i) {
    std::vector<R> row(static_cast<std::size_t>(lp.num_vars), T::zero());
    row[static_cast<std::size_t>(gp + i - 1)] = T::one();
    row[static_cast<std::size_t>(gm + i - 1)] = -T::one();
    for (int n = 0; n < M; ++n) {
      const R coeff = rep.segments[static_cast<std::size_t>(n)].first *
                      rep.segments[static_cast<std::size_t>(n)].second.get(i);
      row[static_cast<std::size_t>(sp + n)] = coeff;
      row[static_cast<std::size_t>(sm + n)] = -coeff;
    }
    lp.add_row(std::move(row), Rel::eq, f.get(i));
  }
  {
    std::vector<R> row(static_cast<std::size_t>(lp.num_vars), T::zero());
    const R inv_cross = T::one() / rep.cross_radius;
    for (int i = 0; i < N; ++i) {
      row[static_cast<std::size_t>(gp + i)] = inv_cross;
      row[static_cast<std::size_t>(gm + i)] = inv_cross;
    }
    row[static_cast<std::size_t>(tv)] = -T::one();
    lp.add_row(std::move(row), Rel::le, T::zero());
  }
  for (int n = 0; n < M; ++n) {
    std::vector<R> row(static_cast<std::size_t>(lp.num_vars), T::zero());
    row[static_cast<std::size_t>(sp + n)] = T::one();
    row[static_cast<std::size_t>(sm + n)] = T::one();
    row[static_cast<std::size_t>(tv)] = -T::one();
    lp.add_row(std::move(row), Rel::le, T::zero());
  }

  const auto sol = solve_lp(lp);
  if (sol.status != LpStatus::optimal)
    throw Error("dual_norm_gauge: unexpected LP status");
  const R t = sol.x[static_cast<std::size_t>(tv)];
  if (T::is_zero(t)) throw Error("dual_norm_gauge: zero gauge for nonzero input");
  const R inv_t = T::one() / t;
  for (int i = 1; i <= N; ++i)
    dec.f0.set(i, (sol.x[static_cast<std::size_t>(gp + i - 1)] -
                   sol.x[static_cast<std::size_t>(gm + i - 1)]) * inv_t);
  for (int n = 0; n < M; ++n)
    dec.s[static_cast<std::size_t>(n)] = (sol.x[static_cast<std::size_t>(sp + n)] -
                                          sol.x[static_cast<std::size_t>(sm + n)]) * inv_t;
  dec.residual_check = assemble(rep, dec) == f * inv_t;
  return {t, dec};
}

/// Dual norm as direct maximization over the primal unit ball:
///   p*(f) = max f(x)  s.t.  ||x||_sup + sum r_n |<v_n, x>| <= 1,
/// with auxiliary epigraph variables. Returns the optimum and a
/// maximizer on the p-unit sphere.
template <class R>
std::pair<R, Vec<R>> dual_norm_support(const SumNormSpec<R>& spec, const Vec<R>& f) {
  using T = scalar_traits<R>;
  if (f.dim() != spec.dim) throw DimensionMismatch("dual_norm_support: dimension mismatch");
  const int N = spec.dim;
  const int M = spec.row_count();
  if (f.is_zero()) return {T::zero(), Vec<R>(N)};

  // Variables: xp(N) xm(N) u y(M).
  const int xp = 0, xm = N, uv = 2 * N, yv = 2 * N + 1;
  LpProblem<R> lp(2 * N + 1 + M);
  lp.maximize = true;
  for (int i = 1; i <= N; ++i) {
    lp.objective[static_cast<std::size_t>(xp + i - 1)] = f.get(i);
    lp.objective[static_cast<std::size_t>(xm + i - 1)] = -f.get(i);
  }
  for (int i = 0; i < N; ++i) {
    for (int sign = 0; sign < 2; ++sign) {
      std::vector<R> row(static_cast<std::size_t>(lp.num_vars), T::zero());
      row[static_cast<std::size_t>(xp + i)] = sign ? -T::one() : T::one();
      row[static_cast<std::size_t>(xm + i)] = sign ? T::one() : -T::one();
      row[static_cast<std::size_t>(uv)] = -T::one();
      lp.add_row(std::move(row), Rel::le, T::zero());
    }
  }
  for (int n = 0; n < M; ++n) {
    for (int sign = 0; sign < 2; ++sign) {
      std::vector<R> row(static_cast<std::size_t>(lp.num_vars), T::zero());
      const auto& v = spec.rows[static_cast<std::size_t>(n)];
      for (const auto& [i, coeff] : v.entries()) {
        const R c = sign ? -coeff : coeff;
        row[static_cast<std::size_t>(xp + i - 1)] = c;
        row[static_cast<std::size_t>(xm + i - 1)] = -c;
      }
      row[static_cast<std::size_t>(yv + n)] = -T::one();
      lp.add_row(std::move(row), Rel::le, T::zero());
    }
  }
  {
    std::vector<R> row(static_cast<std::size_t>(lp.num_vars), T::zero());
    row[static_cast<std::size_t>(uv)] = T::one();
    for (int n = 0; n < M; ++n)
      row[static_cast<std::size_t>(yv + n)] = spec.r[static_cast<std::size_t>(n)];
    lp.add_row(std::move(row), Rel::le, T::one());
  }

  const auto sol = solve_lp(lp);
  if (sol.status != LpStatus::optimal)
    throw Error("dual_norm_support: unexpected LP status");
  Vec<R> x(N);
  for (int i = 1; i <= N; ++i)
    x.set(i, sol.x[static_cast<std::size_t>(xp + i - 1)] -
                 sol.x[static_cast<std::size_t>(xm + i - 1)]);
  return {sol.value, x};
}

enum class TieRule { lowest_index, highest_index };

/// Constructive supporting functional at x != 0:
///   f0 = sign(x_k) e_k at a maximal coordinate, s_n = sign(<v_n, x>).
/// The assembled functional pairs with x to exactly p(x) and has dual
/// norm exactly 1.
template <class R>
Decomposition<R> supporting_functional(const SumNormSpec<R>& spec, const Vec<R>& x,
                                       TieRule tie = TieRule::lowest_index) {
  using T = scalar_traits<R>;
  if (x.dim() != spec.dim) throw DimensionMismatch("supporting_functional: dimension mismatch");
  if (x.is_zero()) throw PreconditionError("supporting_functional: x must be nonzero");
  int best_index = 0;
  R best = T::zero();
  for (const auto& [i, v] : x.entries()) {
    const R a = T::abs(v);
    const bool better = (best_index == 0) || (a > best) ||
                        (a == best && tie == TieRule::highest_index);
    if (better) {
      best = a;
      best_index = i;
    }
  }
  Decomposition<R> dec;
  dec.f0 = Vec<R>(spec.dim);
  dec.f0.set(best_index, T::from_long(T::sign(x.get(best_index))));
  dec.s.reserve(spec.rows.size());
  for (const auto& row : spec.rows)
    dec.s.push_back(T::from_long(T::sign(pairing(row, x))));
  dec.residual_check = true;
  return dec;
}

/// Attainment feasibility at the pair (f, x): searches for a dual-ball
/// decomposition of f whose segment coefficients match sign(<v_n, x>)
/// wherever that sign is nonzero and whose l1 part pairs with x to the
/// full sup norm. Exact infeasibility refutes attainment of f at x.
template <class R>
std::optional<Decomposition<R>> decompose_attaining(const DualBallRep<R>& rep,
                                                    const Vec<R>& f, const Vec<R>& x) {
  using T = scalar_traits<R>;
  if (f.dim() != rep.dim || x.dim() != rep.dim)
    throw DimensionMismatch("decompose_attaining: dimension mismatch");
  if (!T::eq(dual_norm_gauge(rep, f).first, T::one()))
    throw PreconditionError("decompose_attaining: f must have dual norm 1");
  if (!T::eq(support_function(rep, x), T::one()))
    throw PreconditionError("decompose_attaining: x must lie on the p-unit sphere");

  const int N = rep.dim;
  const int M = static_cast<int>(rep.segments.size());
  std::vector<int> fixed_sign(static_cast<std::size_t>(M), 0);
  std::vector<int> free_slot(static_cast<std::size_t>(M), -1);
  int free_count = 0;
  for (int n = 0; n < M; ++n) {
    const int sg = T::sign(pairing(rep.segments[static_cast<std::size_t>(n)].second, x));
    if (sg != 0)
      fixed_sign[static_cast<std::size_t>(n)] = sg;
    else
      free_slot[static_cast<std::size_t>(n)] = free_count++;
  }

  // Variables: fp(N) fm(N) then (sp, sm) per free segment.
  const int fp = 0, fm = N, sfree = 2 * N;
  LpProblem<R> lp(2 * N + 2 * free_count);
  lp.maximize = false;  // pure feasibility

  for (int i = 1; i <= N; ++i) {
    std::vector<R> row(static_cast<std::size_t>(lp.num_vars), T::zero());
    row[static_cast<std::size_t>(fp + i - 1)] = T::one();
    row[static_cast<std::size_t>(fm + i - 1)] = -T::one();
    R rhs = f.get(i);
    for (int n = 0; n < M; ++n) {
      const R coeff = rep.segments[static_cast<std::size_t>(n)].first *
                      rep.segments[static_cast<std::size_t>(n)].second.get(i);
      if (fixed_sign[static_cast<std::size_t>(n)] != 0) {
        rhs -= T::from_long(fixed_sign[static_cast<std::size_t>(n)]) * coeff;
      } else {
        const int k = free_slot[static_cast<std::size_t>(n)];
        row[static_cast<std::size_t>(sfree + 2 * k)] = coeff;
        row[static_cast<std::size_t>(sfree + 2 * k + 1)] = -coeff;
      }
    }
    lp.add_row(std::move(row), Rel::eq, rhs);
  }
  {
    std::vector<R> row(static_cast<std::size_t>(lp.num_vars), T::zero());
    for (int i = 0; i < N; ++i) {
      row[static_cast<std::size_t>(fp + i)] = T::one();
      row[static_cast<std::size_t>(fm + i)] = T::one();
    }
    lp.add_row(std::move(row), Rel::le, rep.cross_radius);
  }
  for (int k = 0; k < free_count; ++k) {
    std::vector<R> row(static_cast<std::size_t>(lp.num_vars), T::zero());
    row[static_cast<std::size_t>(sfree + 2 * k)] = T::one();
    row[static_cast<std::size_t>(sfree + 2 * k + 1)] = T::one();
    lp.add_row(std::move(row), Rel::le, T::one());
  }
  {
    std::vector<R> row(static_cast<std::size_t>(lp.num_vars), T::zero());
    for (const auto& [i, v] : x.entries()) {
      row[static_cast<std::size_t>(fp + i - 1)] = v;
      row[static_cast<std::size_t>(fm + i - 1)] = -v;
    }
    lp.add_row(std::move(row), Rel::eq, rep.cross_radius * sup_norm(x));
  }

  const auto sol = solve_lp(lp);
  if (sol.status == LpStatus::infeasible) return std::nullopt;
  if (sol.status != LpStatus::optimal)
    throw Error("decompose_attaining: unexpected LP status");

  Decomposition<R> dec;
  dec.f0 = Vec<R>(N);
  for (int i = 1; i <= N; ++i)
    dec.f0.set(i, sol.x[static_cast<std::size_t>(fp + i - 1)] -
                      sol.x[static_cast<std::size_t>(fm + i - 1)]);
  dec.s.assign(static_cast<std::size_t>(M), T::zero());
  for (int n = 0; n < M; ++n) {
    if (fixed_sign[static_cast<std::size_t>(n)] != 0) {
      dec.s[static_cast<std::size_t>(n)] = T::from_long(fixed_sign[static_cast<std::size_t>(n)]);
    } else {
      const int k = free_slot[static_cast<std::size_t>(n)];
      dec.s[static_cast<std::size_t>(n)] = sol.x[static_cast<std::size_t>(sfree + 2 * k)] -
                                           sol.x[static_cast<std::size_t>(sfree + 2 * k + 1)];
    }
  }
  dec.residual_check = assemble(rep, dec) == f;
  if constexpr (T::exact) {
    if (!dec.residual_check)
      throw Error("decompose_attaining: feasible point failed exact verification");
  }
  return dec;
}

}  // namespace normlab
