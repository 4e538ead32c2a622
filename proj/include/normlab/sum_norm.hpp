#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "normlab/disc_range.hpp"
#include "normlab/sample.hpp"
#include "normlab/vec.hpp"

namespace normlab {

template <class To, class From>
To convert_scalar(const From& v) {
  if constexpr (std::is_same_v<To, From>) return v;
  else if constexpr (std::is_same_v<To, double>) return scalar_traits<From>::to_double(v);
  else return scalar_traits<To>::from_double(v);  // binary64 -> exact rational
}

template <class To, class From>
Vec<To> convert_vec(const Vec<From>& v) {
  Vec<To> out(v.dim());
  for (const auto& [i, x] : v.entries()) out.set(i, convert_scalar<To>(x));
  return out;
}

/// Renorming of the sup-norm truncation by adding a weighted l1 image:
///   p(x) = ||x||_sup + sum_n r_n |<row_n, x>|.
/// Rows are stored as l1-normalized dual directions; the weights r_n
/// carry all scale. rho = sum r_n bounds the perturbation operator norm,
/// and when an epsilon budget is present the invariant
/// rho < eps/(2-eps) holds strictly.
template <class R>
struct SumNormSpec {
  int dim = 0;
  std::vector<R> r;
  std::vector<Vec<R>> rows;
  std::optional<R> epsilon;
  R rho = scalar_traits<R>::zero();
  // l1-covering radius of {±row_n} over the deterministic dual-sphere
  // mesh; the finite surrogate for density of the normalized directions.
  R covering_radius = scalar_traits<R>::zero();

  int row_count() const { return static_cast<int>(rows.size()); }
};

/// Deterministic dual-sphere mesh and the covering radius of {±rows}.
template <class R>
R covering_radius_of_rows(const std::vector<Vec<R>>& rows, int dim, int mesh_factor = 32) {
  using T = scalar_traits<R>;
  if (rows.empty()) throw PreconditionError("covering radius of empty row set");
  constexpr std::uint64_t kMeshSeed = 0x6d657368u;  // fixed: mesh is part of the method
  Rng rng(kMeshSeed);
  const int count = mesh_factor * dim;
  R worst = T::zero();
  for (int c = 0; c < count; ++c) {
    Vec<Rat> raw = random_rational_vec(dim, rng, 4);
    const Rat n = l1_norm(raw);
    if (sgn(n) == 0) continue;
    Vec<R> u = convert_vec<R>(raw * (1 / n));
    bool first = true;
    R best = T::zero();
    for (const auto& row : rows) {
      const R dplus = l1_norm(u - row);
      const R dminus = l1_norm(u + row);
      const R d = dplus < dminus ? dplus : dminus;
      if (first || d < best) {
        best = d;
        first = false;
      }
    }
    if (best > worst) worst = best;
  }
  return worst;
}

/// Weight scale c for the default geometric weights r_n = c 2^-n.
/// c sits at 99/100 of the budget eps/(2-eps); the full geometric series
/// then sums below c, so every truncation satisfies the strict bound.
template <class R>
R geometric_weight_scale(const R& epsilon) {
  using T = scalar_traits<R>;
  if (!(T::zero() < epsilon) || !(epsilon < T::from_long(2)))
    throw PreconditionError("epsilon must lie in (0, 2)");
  const R bound = epsilon / (T::from_long(2) - epsilon);
  return bound * T::from_long(99) / T::from_long(100);
}

template <class R>
std::vector<R> geometric_weights(const R& epsilon, int count) {
  using T = scalar_traits<R>;
  const R c = geometric_weight_scale(epsilon);
  std::vector<R> out;
  out.reserve(static_cast<std::size_t>(count));
  R p = c;
  const R half = T::one() / T::from_long(2);
  for (int n = 0; n < count; ++n) {
    p = p * half;
    out.push_back(p);
  }
  return out;
}

/// Validates invariants and assembles the spec. Rows are l1-normalized
/// here; callers may pass unnormalized directions.
template <class R>
SumNormSpec<R> make_sum_norm_spec(int dim, std::vector<R> weights,
                                  std::vector<Vec<R>> rows,
                                  std::optional<R> epsilon = std::nullopt,
                                  int mesh_factor = 32) {
  using T = scalar_traits<R>;
  if (dim < 1) throw PreconditionError("spec dimension must be >= 1");
  if (weights.size() != rows.size())
    throw PreconditionError("weight/row count mismatch");
  if (rows.empty()) throw PreconditionError("spec needs at least one row");
  SumNormSpec<R> spec;
  spec.dim = dim;
  spec.epsilon = epsilon;
  R rho = T::zero();
  for (const R& w : weights) {
    if (!(T::zero() < w)) throw PreconditionError("weights r_n must be positive");
    rho += w;
  }
  for (auto& row : rows) {
    if (row.dim() != dim) throw DimensionMismatch("row dimension mismatch");
    const R n = l1_norm(row);
    if (T::is_zero(n)) throw PreconditionError("zero row");
    row *= T::one() / n;
  }
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = a + 1; b < rows.size(); ++b)
      if (rows[a] == rows[b])
        throw PreconditionError("duplicate normalized rows at positions " +
                                std::to_string(a + 1) + "," + std::to_string(b + 1));
  if (epsilon) {
    if (!(T::zero() < *epsilon) || !(*epsilon < T::from_long(2)))
      throw PreconditionError("epsilon must lie in (0, 2)");
    const R bound = *epsilon / (T::from_long(2) - *epsilon);
    if (!(rho < bound))
      throw PreconditionError("rho = " + T::str(rho) +
                              " violates the strict budget eps/(2-eps) = " + T::str(bound));
  }
  spec.r = std::move(weights);
  spec.rows = std::move(rows);
  spec.rho = rho;
  spec.covering_radius = covering_radius_of_rows(spec.rows, dim, mesh_factor);
  return spec;
}

template <class R>
R p_norm(const SumNormSpec<R>& spec, const Vec<R>& x) {
  using T = scalar_traits<R>;
  if (x.dim() != spec.dim) throw DimensionMismatch("p_norm: dimension mismatch");
  R out = sup_norm(x);
  for (int n = 0; n < spec.row_count(); ++n)
    out += spec.r[static_cast<std::size_t>(n)] *
           T::abs(pairing(spec.rows[static_cast<std::size_t>(n)], x));
  return out;
}

enum class RowGenerator { disc, biortho, explicit_rows };

namespace detail {

/// Seeded polynomials with dyadic coefficients; their node images give
/// mixed-sign l1 directions once normalized.
inline std::vector<Vec<Rat>> disc_generated_rows(int dim, int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vec<Rat>> rows;
  rows.reserve(static_cast<std::size_t>(count));
  int attempts = 0;
  while (static_cast<int>(rows.size()) < count) {
    if (++attempts > 64 * count)
      throw PreconditionError("disc generator failed to produce distinct rows");
    const int degree = 1 + static_cast<int>(rng.uniform_int(0, 5));
    std::vector<Rat> coeffs;
    coeffs.reserve(static_cast<std::size_t>(degree) + 1);
    for (int k = 0; k <= degree; ++k) {
      Rat c(rng.uniform_int(-16, 16), 16);
      c.canonicalize();
      coeffs.push_back(c);
    }
    Poly<Rat> f{std::move(coeffs)};
    if (f.is_zero()) continue;
    Vec<Rat> image = disc_operator_apply(f, dim);
    const Rat n = l1_norm(image);
    if (sgn(n) == 0) continue;
    image *= 1 / n;
    bool dup = false;
    for (const auto& existing : rows)
      if (existing == image) {
        dup = true;
        break;
      }
    if (!dup) rows.push_back(std::move(image));
  }
  return rows;
}

inline std::vector<Vec<Rat>> biortho_generated_rows(int dim, int count, std::uint64_t seed) {
  if (count > dim)
    throw PreconditionError("biortho generator: row count cannot exceed dimension");
  Rng rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<Vec<Rat>> w;
    w.reserve(static_cast<std::size_t>(count));
    for (int n = 0; n < count; ++n) w.push_back(random_rational_vec(dim, rng));
    if (rank(w) != count) continue;
    auto system = biorthogonal_system(w);
    return system.v_star;
  }
  throw PreconditionError("biortho generator: could not sample an independent system");
}

}  // namespace detail

struct BuildOptions {
  int rows = 0;         // 0 = generator default (2*dim disc, dim biortho)
  int mesh_factor = 32; // covering-radius mesh density
};

/// Builds a budgeted spec: rows from the chosen generator, geometric
/// weights under the strict eps/(2-eps) budget, covering radius reported.
template <class R>
SumNormSpec<R> build_sum_spec(int dim, const R& epsilon, RowGenerator generator,
                              std::uint64_t seed, BuildOptions options = {},
                              std::vector<Vec<R>> explicit_rows = {},
                              std::vector<R> explicit_weights = {}) {
  if (dim < 2) throw PreconditionError("build_sum_spec: dim must be >= 2");
  std::vector<Vec<R>> rows;
  switch (generator) {
    case RowGenerator::disc: {
      const int count = options.rows > 0 ? options.rows : 2 * dim;
      for (auto& row : detail::disc_generated_rows(dim, count, seed))
        rows.push_back(convert_vec<R>(row));
      break;
    }
    case RowGenerator::biortho: {
      const int count = options.rows > 0 ? options.rows : dim;
      for (auto& row : detail::biortho_generated_rows(dim, count, seed))
        rows.push_back(convert_vec<R>(row));
      break;
    }
    case RowGenerator::explicit_rows:
      if (explicit_rows.empty())
        throw PreconditionError("explicit generator needs rows");
      rows = std::move(explicit_rows);
      break;
  }
  std::vector<R> weights = explicit_weights.empty()
                               ? geometric_weights(epsilon, static_cast<int>(rows.size()))
                               : std::move(explicit_weights);
  return make_sum_norm_spec(dim, std::move(weights), std::move(rows),
                            std::optional<R>(epsilon), options.mesh_factor);
}

}  // namespace normlab
