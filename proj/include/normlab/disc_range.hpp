#pragma once

#include <functional>
#include <vector>

#include "normlab/operator_cols.hpp"
#include "normlab/polynomial.hpp"

namespace normlab {

/// The evaluation nodes 2^-1, 2^-2, ..., 2^-N.
inline std::vector<Rat> dyadic_points(int count) {
  if (count < 1) throw PreconditionError("dyadic_points: need count >= 1");
  std::vector<Rat> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int n = 1; n <= count; ++n) out.push_back(pow2_inv(static_cast<unsigned>(n)));
  return out;
}

/// Surrogate second node family 3^-1, ..., 3^-N. Pairing the dyadic and
/// triadic samplings yields two ranges whose intersection is checked
/// empirically by rank, not proved.
inline std::vector<Rat> triadic_points(int count) {
  if (count < 1) throw PreconditionError("triadic_points: need count >= 1");
  std::vector<Rat> out;
  out.reserve(static_cast<std::size_t>(count));
  Rat p(1, 3);
  for (int n = 1; n <= count; ++n) {
    out.push_back(p);
    p /= 3;
  }
  return out;
}

/// Sampling operator into the l1 truncation: coordinate k is
/// f(node_k) / 2^(k-1), evaluated exactly.
inline Vec<Rat> node_operator_apply(const Poly<Rat>& f, const std::vector<Rat>& nodes) {
  if (nodes.empty()) throw PreconditionError("node_operator_apply: empty node list");
  Vec<Rat> out(static_cast<int>(nodes.size()));
  for (int k = 1; k <= static_cast<int>(nodes.size()); ++k) {
    Rat value = f.eval(nodes[static_cast<std::size_t>(k - 1)]) *
                pow2_inv(static_cast<unsigned>(k - 1));
    out.set(k, value);
  }
  return out;
}

/// The dyadic-node sampling operator at truncation N.
inline Vec<Rat> disc_operator_apply(const Poly<Rat>& f, int truncation) {
  return node_operator_apply(f, dyadic_points(truncation));
}

/// The polynomial ((4 - (z - 2^-m)^2) / 4)^n: value 1 at node m, values in
/// (0,1) at every other node, so its powers concentrate on coordinate m.
inline Poly<Rat> density_witness(int m, int n) {
  if (m < 1 || n < 1) throw PreconditionError("density_witness: need m, n >= 1");
  const Rat tm = pow2_inv(static_cast<unsigned>(m));
  // (4 - (z - tm)^2) / 4 = 1 - tm^2/4 + (tm/2) z - z^2/4
  Poly<Rat> base({Rat(1) - tm * tm / 4, tm / 2, Rat(-1, 4)});
  return base.pow(static_cast<unsigned>(n));
}

/// Number of dyadic nodes among the first `truncation` at which f vanishes.
/// Bounded by deg(f) since a nonzero polynomial has at most deg roots.
inline int zero_coordinate_count(const Poly<Rat>& f, int truncation) {
  if (f.is_zero()) throw PreconditionError("zero_coordinate_count: zero polynomial");
  int count = 0;
  for (const Rat& t : dyadic_points(truncation))
    if (sgn(f.eval(t)) == 0) ++count;
  return count;
}

/// s_n = min(1, 1/norm_n) for positive preimage norms.
inline std::vector<Rat> scaling_coefficients(const std::vector<Rat>& preimage_norms) {
  std::vector<Rat> out;
  out.reserve(preimage_norms.size());
  for (const Rat& n : preimage_norms) {
    if (sgn(n) <= 0) throw PreconditionError("scaling_coefficients: nonpositive norm");
    Rat inv = 1 / n;
    out.push_back(inv < 1 ? inv : Rat(1));
  }
  return out;
}

/// Perturbation-size rule for dense_normalized_columns. Receives the
/// 1-based column index and the preimage norm of the target.
using EpsRule = std::function<Rat(int, const Rat&)>;

/// Default rule eps_n = 2^-n / (1 + preimage_norm): the product
/// preimage_norm * eps_n is then a strictly decreasing null sequence.
inline Rat default_eps_rule(int n, const Rat& preimage_norm) {
  return pow2_inv(static_cast<unsigned>(n)) / (1 + preimage_norm);
}

template <class R>
struct DenseColumnsResult {
  OperatorColumns<R> op;
  std::vector<R> deviations;      // ||col_n/||col_n|| - w_n||_1
  std::vector<R> preimage_norms;  // ||T1^-1 w_n||_1
  std::vector<R> epsilons;
  std::vector<R> scalings;        // s_n
};

/// Columns s_n * T1(u_n + eps_n * U2 e_n) targeting the unit vectors w_n,
/// where u_n is the l1-normalized T1-preimage of w_n. Reports the exact
/// l1 deviation of each normalized column from its target.
inline DenseColumnsResult<Rat> dense_normalized_columns(
    const std::vector<Vec<Rat>>& targets, const OperatorColumns<Rat>& t1,
    const OperatorColumns<Rat>& u2, const EpsRule& eps_rule = default_eps_rule) {
  if (u2.codomain_dim != t1.domain_dim)
    throw DimensionMismatch("dense_normalized_columns: U2 must map into the domain of T1");
  if (static_cast<int>(targets.size()) > u2.domain_dim)
    throw PreconditionError("dense_normalized_columns: more targets than U2 columns");

  DenseColumnsResult<Rat> result;
  std::vector<Vec<Rat>> cols;
  for (int n = 1; n <= static_cast<int>(targets.size()); ++n) {
    const Vec<Rat>& w = targets[static_cast<std::size_t>(n - 1)];
    if (l1_norm(w) != 1)
      throw PreconditionError("dense_normalized_columns: target is not an l1 unit vector");
    auto y = solve_columns(t1, w);
    if (!y || y->is_zero())
      throw PreconditionError("dense_normalized_columns: target outside the range of T1");
    const Rat pre_norm = l1_norm(*y);
    const Vec<Rat> u = *y * (1 / pre_norm);
    const Rat eps = eps_rule(n, pre_norm);
    if (sgn(eps) < 0) throw PreconditionError("dense_normalized_columns: negative eps");

    Vec<Rat> domain_vec = u;
    domain_vec.axpy(eps, u2.column(n));
    Vec<Rat> image = t1.apply(domain_vec);
    const Rat s = pre_norm > 1 ? 1 / pre_norm : Rat(1);
    Vec<Rat> col = image * s;

    const Rat col_norm = l1_norm(col);
    if (sgn(col_norm) == 0)
      throw PreconditionError("dense_normalized_columns: zero column (T1 not injective here)");
    result.deviations.push_back(l1_norm(col * (1 / col_norm) - w));
    result.preimage_norms.push_back(pre_norm);
    result.epsilons.push_back(eps);
    result.scalings.push_back(s);
    cols.push_back(std::move(col));
  }
  result.op = OperatorColumns<Rat>(std::move(cols), t1.codomain_dim);
  return result;
}

template <class R>
struct BiorthogonalSystem {
  std::vector<Vec<R>> v;       // sup-normalized spanning vectors
  std::vector<Vec<R>> v_star;  // functionals with v_star_i(v_j) = delta_ij
};

/// Gram-Schmidt in the ambient Euclidean pairing, run exactly. Output
/// spans agree with the input prefixes, biorthogonality is exact, and
/// the v are rescaled to unit sup norm (functionals rescaled inversely).
template <class R>
BiorthogonalSystem<R> biorthogonal_system(const std::vector<Vec<R>>& w) {
  using T = scalar_traits<R>;
  if (w.empty()) throw PreconditionError("biorthogonal_system: empty input");
  const int dim = w.front().dim();
  BiorthogonalSystem<R> out;
  std::vector<Vec<R>> ortho;       // raw Gram-Schmidt vectors h_k
  std::vector<R> ortho_sq;         // <h_k, h_k>
  for (const auto& wk : w) {
    if (wk.dim() != dim) throw DimensionMismatch("biorthogonal_system: mixed dimensions");
    Vec<R> h = wk;
    for (std::size_t j = 0; j < ortho.size(); ++j)
      h.axpy(-(pairing(wk, ortho[j]) / ortho_sq[j]), ortho[j]);
    if (h.is_zero())
      throw PreconditionError("biorthogonal_system: linearly dependent input");
    const R hh = pairing(h, h);
    const R scale = sup_norm(h);
    out.v.push_back(h * (T::one() / scale));
    out.v_star.push_back(h * (scale / hh));
    ortho.push_back(std::move(h));
    ortho_sq.push_back(hh);
  }
  return out;
}

/// Extends functionals over a partition of the domain indices: column k
/// becomes y_star[block(k)] + T(e_k)/k. The 1/k damping keeps the
/// perturbation norms strictly decreasing along every block.
template <class R>
OperatorColumns<R> direct_sum_extension(
    const std::vector<Vec<R>>& y_star, const OperatorColumns<R>& t,
    const std::function<int(int)>& block_of) {
  if (y_star.empty()) throw PreconditionError("direct_sum_extension: no block functionals");
  for (const auto& y : y_star)
    if (y.dim() != t.codomain_dim)
      throw DimensionMismatch("direct_sum_extension: functional dimension mismatch");
  std::vector<Vec<R>> cols;
  cols.reserve(static_cast<std::size_t>(t.domain_dim));
  for (int k = 1; k <= t.domain_dim; ++k) {
    const int block = block_of(k);
    if (block < 1 || block > static_cast<int>(y_star.size()))
      throw PreconditionError("direct_sum_extension: index " + std::to_string(k) +
                              " has no assigned block functional");
    Vec<R> col = y_star[static_cast<std::size_t>(block - 1)];
    col.axpy(scalar_traits<R>::one() / scalar_traits<R>::from_long(k), t.column(k));
    cols.push_back(std::move(col));
  }
  return OperatorColumns<R>(std::move(cols), t.codomain_dim);
}

}  // namespace normlab
