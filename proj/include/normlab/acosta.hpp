#pragma once

#include <optional>
#include <set>
#include <vector>

#include "normlab/vec.hpp"

namespace normlab {

/// The weighted mixed norm  ||z|| = max_n (1-w_n)|z_n| + sum_n w_n|z_n|
/// with weights 0 < w_n < 1. Weights either come from the power-law
/// family w_n = coeff/(n+1)^exponent (whose tail sums are decidable) or
/// from an explicit finite list with no tail model.
template <class R>
struct AcostaSpec {
  struct PowerLawTail {
    R coeff;       // 0 < coeff <= 1
    int exponent;  // >= 1
  };

  int dim = 0;
  std::vector<R> w;
  std::optional<PowerLawTail> tail;

  static AcostaSpec power_law(int dim, const R& coeff, int exponent) {
    using T = scalar_traits<R>;
    if (dim < 1) throw PreconditionError("acosta spec: dim must be >= 1");
    if (!(T::zero() < coeff) || coeff > T::one())
      throw PreconditionError("acosta spec: coeff must lie in (0, 1]");
    if (exponent < 1) throw PreconditionError("acosta spec: exponent must be >= 1");
    AcostaSpec spec;
    spec.dim = dim;
    spec.tail = PowerLawTail{coeff, exponent};
    spec.w.reserve(static_cast<std::size_t>(dim));
    for (int n = 1; n <= dim; ++n) {
      R denom = T::one();
      for (int k = 0; k < exponent; ++k) denom *= T::from_long(n + 1);
      spec.w.push_back(coeff / denom);
    }
    validate(spec);
    return spec;
  }

  static AcostaSpec from_weights(std::vector<R> weights) {
    AcostaSpec spec;
    spec.dim = static_cast<int>(weights.size());
    spec.w = std::move(weights);
    validate(spec);
    return spec;
  }

 private:
  static void validate(const AcostaSpec& spec) {
    using T = scalar_traits<R>;
    if (spec.w.empty()) throw PreconditionError("acosta spec: empty weights");
    for (const R& wn : spec.w)
      if (!(T::zero() < wn) || !(wn < T::one()))
        throw PreconditionError("acosta spec: weights must satisfy 0 < w_n < 1");
  }
};

template <class R>
R acosta_norm(const AcostaSpec<R>& spec, const Vec<R>& z) {
  using T = scalar_traits<R>;
  if (z.dim() != spec.dim) throw DimensionMismatch("acosta_norm: dimension mismatch");
  R max_part = T::zero();
  R sum_part = T::zero();
  for (const auto& [n, v] : z.entries()) {
    const R a = T::abs(v);
    const R& wn = spec.w[static_cast<std::size_t>(n - 1)];
    const R scaled = (T::one() - wn) * a;
    if (scaled > max_part) max_part = scaled;
    sum_part += wn * a;
  }
  return max_part + sum_part;
}

/// Symbolic support descriptions for the attainment criterion.
struct SupportModel {
  enum class Kind { finite_set, all_indices, beyond, squares };
  Kind kind = Kind::finite_set;
  std::set<int> indices;  // finite_set
  int threshold = 0;      // beyond: all n > threshold

  static SupportModel finite(std::set<int> ix) {
    return {Kind::finite_set, std::move(ix), 0};
  }
  static SupportModel all() { return {Kind::all_indices, {}, 0}; }
  static SupportModel beyond(int n) { return {Kind::beyond, {}, n}; }
  static SupportModel square_indices() { return {Kind::squares, {}, 0}; }
};

/// Necessary-condition check: does sum_{n in support} w_n converge under
/// the weight tail model? Finite supports always pass. Infinite support
/// models require a power-law tail; with w_n = c/(n+1)^a the full and
/// cofinite supports converge iff a >= 2, while the square-indexed
/// support converges for every a >= 1.
template <class R>
bool acosta_attainment_criterion(const AcostaSpec<R>& spec, const SupportModel& support) {
  switch (support.kind) {
    case SupportModel::Kind::finite_set:
      return true;
    case SupportModel::Kind::all_indices:
    case SupportModel::Kind::beyond:
      if (!spec.tail)
        throw PreconditionError(
            "acosta_attainment_criterion: infinite support needs a weight tail model");
      return spec.tail->exponent >= 2;
    case SupportModel::Kind::squares:
      if (!spec.tail)
        throw PreconditionError(
            "acosta_attainment_criterion: infinite support needs a weight tail model");
      return 2 * spec.tail->exponent > 1;
  }
  throw PreconditionError("acosta_attainment_criterion: unknown support model");
}

}  // namespace normlab
