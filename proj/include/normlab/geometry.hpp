#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "normlab/dual_ball.hpp"

namespace normlab {

/// Slice of the p-unit ball: {x in B_p : <direction, x> > 1 - delta},
/// cut by a dual direction with p*(direction) = 1.
template <class R>
struct SliceSpec {
  Vec<R> direction;
  R delta;
};

/// min over the pairs of 1 - p((x+y)/2). Every pair must lie on the
/// p-unit sphere with x != y; a positive margin certifies that the
/// midpoint is interior, the finite strict-convexity statement.
template <class R>
R strict_convexity_margin(const SumNormSpec<R>& spec,
                          const std::vector<std::pair<Vec<R>, Vec<R>>>& pairs) {
  using T = scalar_traits<R>;
  if (pairs.empty()) throw PreconditionError("strict_convexity_margin: no pairs");
  const R half = T::one() / T::from_long(2);
  bool first = true;
  R margin = T::zero();
  for (const auto& [x, y] : pairs) {
    if (x == y) throw PreconditionError("strict_convexity_margin: pair with x = y");
    if (!T::eq(p_norm(spec, x), T::one()) || !T::eq(p_norm(spec, y), T::one()))
      throw PreconditionError("strict_convexity_margin: pair not on the p-unit sphere");
    const R m = T::one() - p_norm(spec, (x + y) * half);
    if (first || m < margin) {
      margin = m;
      first = false;
    }
  }
  return margin;
}

/// Sup-norm-level witness pair at a ball point x (||x||_sup <= 1):
///   y = x + (1 - x(n)) e_n,  z = x - (1 + x(n)) e_n.
/// Both lie on the sup-unit sphere and e_n*(y - z) = 2 exactly.
template <class R>
std::pair<Vec<R>, Vec<R>> sup_witness_pair(const Vec<R>& x, int n) {
  using T = scalar_traits<R>;
  if (!(sup_norm(x) <= T::one()))
    throw PreconditionError("sup_witness_pair: x must lie in the sup-unit ball");
  Vec<R> y = x;
  y.set(n, T::one());
  Vec<R> z = x;
  z.set(n, -T::one());
  return {y, z};
}

template <class R>
struct WitnessSequences {
  Vec<R> y_tilde;  // p-normalized bump up at coordinate n
  Vec<R> z_tilde;  // p-normalized bump down
  Vec<R> g;        // coordinate functional normalized to p* = 1
  R g_scale;       // p*(e_n*)
  R paired;        // <g, y_tilde - z_tilde>
};

/// The explicit diameter witnesses at a p-unit point x and coordinate n:
/// the sup-level pair built on x / ||x||_sup, p-normalized, paired with
/// the p*-normalized coordinate functional. For coordinates the rows
/// barely see, the paired value approaches 2 (1 + ||R||)^-1.
template <class R>
WitnessSequences<R> witness_sequences(const SumNormSpec<R>& spec, const Vec<R>& x, int n) {
  using T = scalar_traits<R>;
  if (n < 1 || n > spec.dim) throw PreconditionError("witness_sequences: n out of range");
  if (!T::eq(p_norm(spec, x), T::one()))
    throw PreconditionError("witness_sequences: x must be a p-unit vector");
  const R beta = sup_norm(x);
  const Vec<R> u = x * (T::one() / beta);
  auto [y, z] = sup_witness_pair(u, n);

  WitnessSequences<R> out;
  out.y_tilde = y * (T::one() / p_norm(spec, y));
  out.z_tilde = z * (T::one() / p_norm(spec, z));
  const auto rep = DualBallRep<R>::from_spec(spec);
  out.g_scale = dual_norm_gauge(rep, Vec<R>::basis(n, spec.dim)).first;
  out.g = Vec<R>::basis(n, spec.dim) * (T::one() / out.g_scale);
  out.paired = pairing(out.g, out.y_tilde - out.z_tilde);
  return out;
}

template <class R>
struct SliceBoundReport {
  R bound = scalar_traits<R>::zero();
  int best_n = 0;
  bool pair_in_slice = false;  // false: no swept pair landed inside
  R c_report = scalar_traits<R>::zero();  // deficit: bound = (1-c) 2(1+rho)^-1
};

namespace detail {

template <class R>
R slice_deficit(const SumNormSpec<R>& spec, const R& bound) {
  using T = scalar_traits<R>;
  const R reference = T::from_long(2) / (T::one() + spec.rho);
  return T::one() - bound / reference;
}

}  // namespace detail

/// Lower bound for the diameter of a slice from the explicit witness
/// pairs, swept over candidate coordinates. Only pairs lying inside the
/// slice count; if none lands, the best value is still reported with
/// pair_in_slice = false.
template <class R>
SliceBoundReport<R> slice_diameter_lower_bound(const SumNormSpec<R>& spec,
                                               const SliceSpec<R>& slice,
                                               const std::vector<int>& n_sweep) {
  using T = scalar_traits<R>;
  if (n_sweep.empty()) throw PreconditionError("slice_diameter_lower_bound: empty sweep");
  const auto rep = DualBallRep<R>::from_spec(spec);
  if (!T::eq(dual_norm_gauge(rep, slice.direction).first, T::one()))
    throw PreconditionError("slice_diameter_lower_bound: direction must have p* = 1");
  if (!(T::zero() < slice.delta) || !(slice.delta < T::one()))
    throw PreconditionError("slice_diameter_lower_bound: delta must lie in (0,1)");
  const auto [value, anchor] = dual_norm_support(spec, slice.direction);

  const R threshold = T::one() - slice.delta;
  SliceBoundReport<R> best_inside;
  SliceBoundReport<R> best_any;
  for (int n : n_sweep) {
    const auto ws = witness_sequences(spec, anchor, n);
    const R dist = p_norm(spec, ws.y_tilde - ws.z_tilde);
    const bool inside = pairing(slice.direction, ws.y_tilde) > threshold &&
                        pairing(slice.direction, ws.z_tilde) > threshold;
    if (dist > best_any.bound || best_any.best_n == 0) {
      best_any.bound = dist;
      best_any.best_n = n;
    }
    if (inside && (dist > best_inside.bound || best_inside.best_n == 0)) {
      best_inside.bound = dist;
      best_inside.best_n = n;
      best_inside.pair_in_slice = true;
    }
  }
  SliceBoundReport<R> out = best_inside.pair_in_slice ? best_inside : best_any;
  out.c_report = detail::slice_deficit(spec, out.bound);
  return out;
}

/// Diameter lower bound for a convex combination sum t_i S_i via the
/// synchronized witness pairs sum t_i y_n^(i), sum t_i z_n^(i).
template <class R>
SliceBoundReport<R> combo_slices_diameter(const SumNormSpec<R>& spec,
                                          const std::vector<SliceSpec<R>>& slices,
                                          const std::vector<R>& weights,
                                          const std::vector<int>& n_sweep) {
  using T = scalar_traits<R>;
  if (slices.empty() || slices.size() != weights.size())
    throw PreconditionError("combo_slices_diameter: slices/weights mismatch");
  if (n_sweep.empty()) throw PreconditionError("combo_slices_diameter: empty sweep");
  R total = T::zero();
  for (const R& w : weights) {
    if (!(T::zero() < w)) throw PreconditionError("combo_slices_diameter: weights must be positive");
    total += w;
  }
  if (!T::eq(total, T::one()))
    throw PreconditionError("combo_slices_diameter: weights must sum to 1");

  const auto rep = DualBallRep<R>::from_spec(spec);
  std::vector<Vec<R>> anchors;
  for (const auto& slice : slices) {
    if (!T::eq(dual_norm_gauge(rep, slice.direction).first, T::one()))
      throw PreconditionError("combo_slices_diameter: direction must have p* = 1");
    if (!(T::zero() < slice.delta) || !(slice.delta < T::one()))
      throw PreconditionError("combo_slices_diameter: delta must lie in (0,1)");
    anchors.push_back(dual_norm_support(spec, slice.direction).second);
  }

  SliceBoundReport<R> best_inside;
  SliceBoundReport<R> best_any;
  for (int n : n_sweep) {
    Vec<R> combo_y(spec.dim), combo_z(spec.dim);
    bool inside = true;
    for (std::size_t i = 0; i < slices.size(); ++i) {
      const auto ws = witness_sequences(spec, anchors[i], n);
      const R threshold = T::one() - slices[i].delta;
      inside = inside && pairing(slices[i].direction, ws.y_tilde) > threshold &&
               pairing(slices[i].direction, ws.z_tilde) > threshold;
      combo_y.axpy(weights[i], ws.y_tilde);
      combo_z.axpy(weights[i], ws.z_tilde);
    }
    const R dist = p_norm(spec, combo_y - combo_z);
    if (dist > best_any.bound || best_any.best_n == 0) {
      best_any.bound = dist;
      best_any.best_n = n;
    }
    if (inside && (dist > best_inside.bound || best_inside.best_n == 0)) {
      best_inside.bound = dist;
      best_inside.best_n = n;
      best_inside.pair_in_slice = true;
    }
  }
  SliceBoundReport<R> out = best_inside.pair_in_slice ? best_inside : best_any;
  out.c_report = detail::slice_deficit(spec, out.bound);
  return out;
}

/// Dual-norm evaluator: the exact l1 norm (dual of the plain sup norm)
/// or the gauge of a spec's dual ball.
template <class R>
struct DualNormFn {
  std::shared_ptr<const SumNormSpec<R>> spec;  // null = plain l1

  R operator()(const Vec<R>& f) const {
    if (!spec) return l1_norm(f);
    return dual_norm_gauge(DualBallRep<R>::from_spec(*spec), f).first;
  }
};

/// Symmetrized difference quotient of the dual norm q at `point` along
/// `direction`, maximized over the step sweep:
///   (q(point + h d) + q(point - h d) - 2 q(point)) / (h q(d)).
template <class R>
R roughness_quotient(const DualNormFn<R>& q, const Vec<R>& point, const Vec<R>& direction,
                     const std::vector<R>& h_sweep) {
  using T = scalar_traits<R>;
  if (point.is_zero() || direction.is_zero())
    throw PreconditionError("roughness_quotient: point and direction must be nonzero");
  if (h_sweep.empty()) throw PreconditionError("roughness_quotient: empty step sweep");
  const R q_point = q(point);
  const R q_dir = q(direction);
  bool first = true;
  R best = T::zero();
  for (const R& h : h_sweep) {
    if (!(T::zero() < h)) throw PreconditionError("roughness_quotient: steps must be positive");
    const Vec<R> step = direction * h;
    const R quotient = (q(point + step) + q(point - step) - q_point - q_point) / (h * q_dir);
    if (first || quotient > best) {
      best = quotient;
      first = false;
    }
  }
  return best;
}

/// Coordinates untouched by the given vectors whose aligned row weight
/// (when the coordinate also indexes a row) sits below the threshold;
/// returned in descending order, the closest finite stand-ins for the
/// n -> infinity witnesses.
template <class R>
std::vector<int> fresh_coordinates(const SumNormSpec<R>& spec,
                                   const std::vector<Vec<R>>& avoid,
                                   const R& weight_threshold, int want = 4) {
  std::vector<int> out;
  for (int n = spec.dim; n >= 1 && static_cast<int>(out.size()) < want; --n) {
    bool touched = false;
    for (const auto& v : avoid)
      if (scalar_traits<R>::sign(v.get(n)) != 0) {
        touched = true;
        break;
      }
    if (touched) continue;
    if (n <= spec.row_count() && !(spec.r[static_cast<std::size_t>(n - 1)] <= weight_threshold))
      continue;
    out.push_back(n);
  }
  return out;
}

}  // namespace normlab
