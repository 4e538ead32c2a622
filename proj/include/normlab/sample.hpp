#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "normlab/vec.hpp"

namespace normlab {

/// Deterministic source of pseudo-random draws. Same seed, same stream,
/// on every platform (mt19937_64 is bit-stable by standard).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform_pm1() {
    return std::uniform_real_distribution<double>(-1.0, 1.0)(eng_);
  }
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(eng_);
  }

 private:
  std::mt19937_64 eng_;
};

/// Seeded float-mode vectors scaled onto the unit sphere of norm_fn.
///
/// norm_fn must be positive-homogeneous and positive on nonzero input.
/// A candidate whose norm vanishes is resampled; after max_retries
/// consecutive failures the call gives up.
inline std::vector<Vec<double>> sphere_sample(
    const std::function<double(const Vec<double>&)>& norm_fn, int dim,
    int count, std::uint64_t seed, int max_retries = 64) {
  if (dim < 1) throw PreconditionError("sphere_sample: dim must be >= 1");
  if (count < 0) throw PreconditionError("sphere_sample: count must be >= 0");
  Rng rng(seed);
  std::vector<Vec<double>> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int c = 0; c < count; ++c) {
    int attempts = 0;
    for (;;) {
      Vec<double> v(dim);
      for (int i = 1; i <= dim; ++i) v.set(i, rng.uniform_pm1());
      const double n = norm_fn(v);
      if (n > 1e-300) {
        out.push_back(v * (1.0 / n));
        break;
      }
      if (++attempts >= max_retries)
        throw PreconditionError("sphere_sample: norm vanished on every candidate");
    }
  }
  return out;
}

/// Seeded exact-mode vector with dyadic coordinates k/2^denom_pow,
/// k in [-2^denom_pow, 2^denom_pow]. Used wherever certificates need
/// exact sign arithmetic on sampled data.
inline Vec<Rat> random_rational_vec(int dim, Rng& rng, unsigned denom_pow = 6) {
  Vec<Rat> v(dim);
  const std::int64_t scale = std::int64_t{1} << denom_pow;
  for (int i = 1; i <= dim; ++i) {
    Rat q(rng.uniform_int(-scale, scale), scale);
    q.canonicalize();
    v.set(i, q);
  }
  return v;
}

}  // namespace normlab
