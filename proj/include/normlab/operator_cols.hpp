#pragma once

#include <optional>
#include <vector>

#include "normlab/vec.hpp"

namespace normlab {

/// Finite-rank operator stored by columns: column n is the image of e_n.
/// Domain indices run 1..domain_dim, codomain indices 1..codomain_dim.
template <class R>
struct OperatorColumns {
  std::vector<Vec<R>> columns;
  int domain_dim = 0;
  int codomain_dim = 0;

  OperatorColumns() = default;
  OperatorColumns(std::vector<Vec<R>> cols, int codom)
      : columns(std::move(cols)),
        domain_dim(static_cast<int>(columns.size())),
        codomain_dim(codom) {
    for (const auto& c : columns)
      if (c.dim() != codomain_dim)
        throw DimensionMismatch("operator column has wrong codomain dimension");
  }

  static OperatorColumns zero(int dom, int codom) {
    std::vector<Vec<R>> cols(static_cast<std::size_t>(dom), Vec<R>(codom));
    return OperatorColumns(std::move(cols), codom);
  }

  static OperatorColumns identity(int n) {
    std::vector<Vec<R>> cols;
    cols.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) cols.push_back(Vec<R>::basis(i, n));
    return OperatorColumns(std::move(cols), n);
  }

  static OperatorColumns scaled_identity(int n, const R& c) {
    auto op = identity(n);
    for (auto& col : op.columns) col *= c;
    return op;
  }

  const Vec<R>& column(int n) const {
    if (n < 1 || n > domain_dim) throw DimensionMismatch("column index out of range");
    return columns[static_cast<std::size_t>(n - 1)];
  }

  Vec<R> apply(const Vec<R>& x) const {
    if (x.dim() != domain_dim) throw DimensionMismatch("apply: domain mismatch");
    Vec<R> out(codomain_dim);
    for (const auto& [i, v] : x.entries()) out.axpy(v, column(i));
    return out;
  }

  /// Adjoint action: coordinate n of the result is <column_n, f>.
  Vec<R> transpose_apply(const Vec<R>& f) const {
    if (f.dim() != codomain_dim) throw DimensionMismatch("transpose_apply: codomain mismatch");
    Vec<R> out(domain_dim);
    for (int n = 1; n <= domain_dim; ++n) out.set(n, pairing(column(n), f));
    return out;
  }

  std::vector<R> column_l1_norms() const {
    std::vector<R> out;
    out.reserve(columns.size());
    for (const auto& c : columns) out.push_back(l1_norm(c));
    return out;
  }

  /// Operator norm l1 -> l1 (max column l1 norm).
  R l1_operator_norm() const {
    using T = scalar_traits<R>;
    R best = T::zero();
    for (const auto& c : columns) {
      R n = l1_norm(c);
      if (best < n) best = n;
    }
    return best;
  }

  /// this o other
  OperatorColumns compose(const OperatorColumns& other) const {
    if (other.codomain_dim != domain_dim)
      throw DimensionMismatch("compose: inner dimensions differ");
    std::vector<Vec<R>> cols;
    cols.reserve(other.columns.size());
    for (const auto& c : other.columns) cols.push_back(apply(c));
    return OperatorColumns(std::move(cols), codomain_dim);
  }
};

namespace detail {

template <class R>
std::vector<std::vector<R>> dense_matrix(const OperatorColumns<R>& op) {
  using T = scalar_traits<R>;
  std::vector<std::vector<R>> m(
      static_cast<std::size_t>(op.codomain_dim),
      std::vector<R>(static_cast<std::size_t>(op.domain_dim), T::zero()));
  for (int j = 0; j < op.domain_dim; ++j)
    for (const auto& [i, v] : op.columns[static_cast<std::size_t>(j)].entries())
      m[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] = v;
  return m;
}

}  // namespace detail

/// Rank by Gaussian elimination; exact for R = Rat.
template <class R>
int rank(const OperatorColumns<R>& op) {
  using T = scalar_traits<R>;
  auto m = detail::dense_matrix(op);
  const int rows = op.codomain_dim, cols = op.domain_dim;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (!T::is_zero(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)])) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[static_cast<std::size_t>(piv)], m[static_cast<std::size_t>(r)]);
    const R inv = T::one() / m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    for (int i = r + 1; i < rows; ++i) {
      const R factor = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] * inv;
      if (T::is_zero(factor)) continue;
      for (int j = c; j < cols; ++j)
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
            factor * m[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
    }
    ++r;
  }
  return r;
}

/// Rank of a list of vectors (rows of a matrix).
template <class R>
int rank(const std::vector<Vec<R>>& vectors) {
  if (vectors.empty()) return 0;
  const int dim = vectors.front().dim();
  std::vector<Vec<R>> cols = vectors;
  return rank(OperatorColumns<R>(std::move(cols), dim));
}

/// Solves op * y = target exactly (consistent systems only).
/// Returns nullopt when target is outside the column span.
template <class R>
std::optional<Vec<R>> solve_columns(const OperatorColumns<R>& op, const Vec<R>& target) {
  using T = scalar_traits<R>;
  if (target.dim() != op.codomain_dim)
    throw DimensionMismatch("solve_columns: codomain mismatch");
  auto m = detail::dense_matrix(op);
  std::vector<R> b = target.dense();
  const int rows = op.codomain_dim, cols = op.domain_dim;
  std::vector<int> pivot_col(static_cast<std::size_t>(rows), -1);
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (!T::is_zero(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)])) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[static_cast<std::size_t>(piv)], m[static_cast<std::size_t>(r)]);
    std::swap(b[static_cast<std::size_t>(piv)], b[static_cast<std::size_t>(r)]);
    const R inv = T::one() / m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    for (int j = c; j < cols; ++j) m[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] *= inv;
    b[static_cast<std::size_t>(r)] = b[static_cast<std::size_t>(r)] * inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      const R factor = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
      if (T::is_zero(factor)) continue;
      for (int j = c; j < cols; ++j)
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
            factor * m[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
      b[static_cast<std::size_t>(i)] -= factor * b[static_cast<std::size_t>(r)];
    }
    pivot_col[static_cast<std::size_t>(r)] = c;
    ++r;
  }
  // Inconsistent system: a zero row with nonzero rhs.
  for (int i = r; i < rows; ++i)
    if (!T::is_zero(b[static_cast<std::size_t>(i)])) return std::nullopt;
  Vec<R> y(op.domain_dim);
  for (int i = 0; i < r; ++i)
    y.set(pivot_col[static_cast<std::size_t>(i)] + 1, b[static_cast<std::size_t>(i)]);
  return y;
}

}  // namespace normlab
