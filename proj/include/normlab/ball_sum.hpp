#pragma once

#include <optional>
#include <variant>

#include "normlab/dual_ball.hpp"
#include "normlab/operator_cols.hpp"

namespace normlab {

template <class R>
R pow2_scalar(unsigned k) {
  using T = scalar_traits<R>;
  R out = T::one();
  const R half = T::one() / T::from_long(2);
  for (unsigned i = 0; i < k; ++i) out *= half;
  return out;
}

/// Renorming whose unit ball is B_base + S(B_l2). The base is either the
/// plain sup-norm truncation or a SumNormSpec. The dual norm gains an
/// additive l2 term:  |f| = base_dual(f) + ||S^T f||_2.
template <class R>
struct BallSumSpec {
  std::optional<SumNormSpec<R>> base;  // nullopt = plain sup norm
  OperatorColumns<R> s_op;
  R rho_s = scalar_traits<R>::zero();
  std::optional<R> target_epsilon;

  int dim() const { return s_op.codomain_dim; }
};

/// Dual norm of the base alone: l1 for the sup norm, the gauge LP value
/// for a sum-norm base.
template <class R>
R base_dual_norm(const BallSumSpec<R>& spec, const Vec<R>& f) {
  if (!spec.base) return l1_norm(f);
  return dual_norm_gauge(DualBallRep<R>::from_spec(*spec.base), f).first;
}

/// |f| = base_dual(f) + ||S^T f||_2. In exact mode the l2 term throws
/// ModeError unless the squared norm is a perfect rational square.
template <class R>
R ball_sum_dual_norm(const BallSumSpec<R>& spec, const Vec<R>& f) {
  if (f.dim() != spec.dim()) throw DimensionMismatch("ball_sum_dual_norm: dimension mismatch");
  if (f.is_zero()) return scalar_traits<R>::zero();
  return base_dual_norm(spec, f) + l2_norm(spec.s_op.transpose_apply(f));
}

/// Smoothing construction: S column n = rho_s * x_n / 2^n over points
/// x_n of the base unit ball. When a target epsilon is supplied, the
/// constant selection (2 - eps')(1 + rho_s)^-1 > 2 - eps is enforced
/// against the base budget eps'.
template <class R>
BallSumSpec<R> smooth_variant(const SumNormSpec<R>& base, const R& rho_s,
                              const std::vector<Vec<R>>& dense_points,
                              std::optional<R> target_epsilon = std::nullopt) {
  using T = scalar_traits<R>;
  if (T::sign(rho_s) < 0) throw PreconditionError("smooth_variant: rho_s must be >= 0");
  for (const auto& x : dense_points)
    if (!(p_norm(base, x) <= T::one()))
      throw PreconditionError("smooth_variant: dense point outside the base unit ball");
  if (target_epsilon) {
    if (!base.epsilon)
      throw PreconditionError("smooth_variant: base spec carries no epsilon budget");
    const R lhs = (T::from_long(2) - *base.epsilon) / (T::one() + rho_s);
    const R rhs = T::from_long(2) - *target_epsilon;
    if (!(*base.epsilon < *target_epsilon) || !(lhs > rhs))
      throw PreconditionError(
          "smooth_variant: constants violate (2-eps')(1+rho_s)^-1 > 2-eps");
  }
  std::vector<Vec<R>> cols;
  cols.reserve(dense_points.size());
  for (std::size_t n = 0; n < dense_points.size(); ++n)
    cols.push_back(dense_points[n] * (rho_s * pow2_scalar<R>(static_cast<unsigned>(n + 1))));
  BallSumSpec<R> out;
  out.base = base;
  out.s_op = cols.empty() ? OperatorColumns<R>::zero(0, base.dim)
                          : OperatorColumns<R>(std::move(cols), base.dim);
  out.rho_s = rho_s;
  out.target_epsilon = target_epsilon;
  // Column bound rho_s * 2^-n, inherited from p(x_n) <= 1.
  for (int n = 1; n <= out.s_op.domain_dim; ++n)
    if (!(sup_norm(out.s_op.column(n)) <= rho_s * pow2_scalar<R>(static_cast<unsigned>(n))))
      throw Error("smooth_variant: column bound violated");
  return out;
}

template <class R>
BallSumSpec<R> smooth_variant(const SumNormSpec<R>& base, const R& rho_s,
                              const std::vector<Vec<R>>& dense_points,
                              const R& target_epsilon) {
  return smooth_variant(base, rho_s, dense_points, std::optional<R>(target_epsilon));
}

}  // namespace normlab
