#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "normlab/dual_ball.hpp"
#include "normlab/sample.hpp"

namespace normlab {

/// Tail disposition of a truncated dual vector: genuinely finite support,
/// or a symbolic continuation (e.g. a sign-pattern generator) beyond the
/// truncation.
enum class Tail { finite, symbolic };

/// Finite-support membership test for the NA baseline of the sup-norm
/// truncation: a dual element attains in the limit model iff its tail is
/// finite. The zero functional attains trivially.
template <class R>
bool na_c0_base(const Vec<R>& f, Tail tail) {
  return f.is_zero() || tail == Tail::finite;
}

/// Norm-attaining functional in symbolic form: the finite part f0 plus
/// the sign pattern sign(<v_n, witness>) applied to the weighted rows.
/// Coordinates beyond any materialization horizon are derivable on
/// demand; expansion is exact and idempotent.
template <class R>
struct AttainingFunctional {
  Vec<R> f0;
  Vec<R> witness;  // p-unit
  std::shared_ptr<const SumNormSpec<R>> spec;
  int horizon = 0;

  /// Sign s_n = sign(<v_n, witness>) for row n (1-based).
  int sign_at(int n) const {
    return scalar_traits<R>::sign(
        pairing(spec->rows[static_cast<std::size_t>(n - 1)], witness));
  }

  /// f0 + sum_{n <= h} s_n r_n v_n; h < 0 means all rows.
  Vec<R> assembled(int h = -1) const {
    using T = scalar_traits<R>;
    const int upto = h < 0 ? spec->row_count() : std::min(h, spec->row_count());
    Vec<R> f = f0;
    for (int n = 1; n <= upto; ++n) {
      const int s = sign_at(n);
      if (s != 0)
        f.axpy(T::from_long(s) * spec->r[static_cast<std::size_t>(n - 1)],
               spec->rows[static_cast<std::size_t>(n - 1)]);
    }
    return f;
  }
};

/// Builds the attaining functional supported at a p-unit witness.
template <class R>
AttainingFunctional<R> make_attaining(std::shared_ptr<const SumNormSpec<R>> spec,
                                      const Vec<R>& witness,
                                      TieRule tie = TieRule::lowest_index) {
  using T = scalar_traits<R>;
  if (!T::eq(p_norm(*spec, witness), T::one()))
    throw PreconditionError("make_attaining: witness must be a p-unit vector");
  auto dec = supporting_functional(*spec, witness, tie);
  AttainingFunctional<R> out;
  out.f0 = std::move(dec.f0);
  out.witness = witness;
  out.spec = std::move(spec);
  out.horizon = out.spec->row_count();
  return out;
}

/// Seeded pair of attaining functionals with linearly independent
/// assemblies and distinct (non-antipodal) witnesses.
template <class R>
std::pair<AttainingFunctional<R>, AttainingFunctional<R>> generate_attaining_pair(
    std::shared_ptr<const SumNormSpec<R>> spec, std::uint64_t seed) {
  using T = scalar_traits<R>;
  if (spec->dim < 2)
    throw PreconditionError("generate_attaining_pair: spec dimension must be >= 2");
  Rng rng(seed);
  auto sample_unit = [&]() -> std::optional<Vec<R>> {
    Vec<R> raw = convert_vec<R>(random_rational_vec(spec->dim, rng));
    if (raw.is_zero()) return std::nullopt;
    return raw * (T::one() / p_norm(*spec, raw));
  };
  for (int attempt = 0; attempt < 64; ++attempt) {
    auto x = sample_unit();
    auto z = sample_unit();
    if (!x || !z) continue;
    if (*x == *z || *x == -(*z)) continue;
    auto f = make_attaining(spec, *x);
    auto g = make_attaining(spec, *z);
    if (rank(std::vector<Vec<R>>{f.assembled(), g.assembled()}) != 2) continue;
    return {std::move(f), std::move(g)};
  }
  throw PreconditionError("generate_attaining_pair: resampling exhausted (degenerate spec)");
}

/// Indices n with <v_n, x> and <v_n, theta z> of strictly opposite sign,
/// i.e. sign(<v_n, x>) + theta sign(<v_n, z>) = 0 with both nonzero.
template <class R>
std::vector<int> sign_cancellation_indices(const SumNormSpec<R>& spec, const Vec<R>& x,
                                           const Vec<R>& z, int theta) {
  using T = scalar_traits<R>;
  if (theta != 1 && theta != -1)
    throw PreconditionError("sign_cancellation_indices: theta must be +1 or -1");
  std::vector<int> out;
  for (int n = 1; n <= spec.row_count(); ++n) {
    const auto& v = spec.rows[static_cast<std::size_t>(n - 1)];
    const int sx = T::sign(pairing(v, x));
    const int sz = T::sign(pairing(v, z)) * theta;
    if (sx != 0 && sz != 0 && sx + sz == 0) out.push_back(n);
  }
  return out;
}

/// Sign-cancellation refutation data for x* + theta z*: a separating cap
/// around the dual direction cap_direction (negative on x, positive on
/// theta z) together with the in-cap rows whose coefficients must cancel.
template <class R>
struct NonAttainmentCertificate {
  int theta = 1;
  std::vector<int> cancel_indices;
  Vec<R> cap_direction;
  R cap_radius = scalar_traits<R>::zero();
  Vec<R> witness_x;
  Vec<R> witness_z;
};

namespace detail {

/// Certificate search for a fixed theta; nullopt when no row cancels.
template <class R>
std::optional<NonAttainmentCertificate<R>> certificate_for_theta(
    const SumNormSpec<R>& spec, const Vec<R>& x, const Vec<R>& z, int theta) {
  using T = scalar_traits<R>;
  const Vec<R> tz = z * T::from_long(theta);
  if (x == tz) return std::nullopt;
  auto cancel = sign_cancellation_indices(spec, x, z, theta);
  if (cancel.empty()) return std::nullopt;

  // Cap centre: the oriented in-cancellation row with the widest strict
  // separation min(-u(x), u(theta z)).
  int best_n = 0;
  int best_orient = 1;
  R best_score = T::zero();
  for (int n : cancel) {
    const auto& v = spec.rows[static_cast<std::size_t>(n - 1)];
    const int orient = -T::sign(pairing(v, x));
    const Vec<R> u = v * T::from_long(orient);
    const R sx = -pairing(u, x);
    const R sz = pairing(u, tz);
    const R score = sx < sz ? sx : sz;
    if (best_n == 0 || score > best_score) {
      best_n = n;
      best_orient = orient;
      best_score = score;
    }
  }

  NonAttainmentCertificate<R> cert;
  cert.theta = theta;
  cert.cap_direction =
      spec.rows[static_cast<std::size_t>(best_n - 1)] * T::from_long(best_orient);
  cert.cap_radius = spec.covering_radius / T::from_long(2);
  cert.witness_x = x;
  cert.witness_z = z;
  for (int n : cancel) {
    const auto& v = spec.rows[static_cast<std::size_t>(n - 1)];
    const R dplus = l1_norm(v - cert.cap_direction);
    const R dminus = l1_norm(v + cert.cap_direction);
    if ((dplus < dminus ? dplus : dminus) <= cert.cap_radius)
      cert.cancel_indices.push_back(n);
  }
  if (cert.cancel_indices.empty()) return std::nullopt;  // cannot happen: centre is in-cap
  return cert;
}

}  // namespace detail

/// Picks a sign theta with x != theta z and produces the refutation
/// certificate for x* + theta z* following the cap construction. Prefers
/// theta = +1; a coincident witness pair forces theta = -1. Throws
/// CoverageError when no row lands in any separating cap.
template <class R>
NonAttainmentCertificate<R> dichotomy_certificate(const SumNormSpec<R>& spec,
                                                  const AttainingFunctional<R>& f,
                                                  const AttainingFunctional<R>& g) {
  if (rank(std::vector<Vec<R>>{f.assembled(), g.assembled()}) != 2)
    throw PreconditionError("dichotomy_certificate: functionals must be linearly independent");
  const Vec<R>& x = f.witness;
  const Vec<R>& z = g.witness;
  for (int theta : {1, -1}) {
    auto cert = detail::certificate_for_theta(spec, x, z, theta);
    if (cert) return *cert;
  }
  throw CoverageError(
      "dichotomy_certificate: no separating cap contains a row; "
      "the density surrogate is too coarse (enlarge the row count)");
}

/// Replays the certificate against a candidate attainment witness e with
/// p(e) = 1. Returns the first in-cap cancelled index at which e acts
/// nontrivially (refutation), or nullopt when e annihilates every
/// certificate row (inconclusive).
template <class R>
std::optional<int> certificate_check(const SumNormSpec<R>& spec,
                                     const NonAttainmentCertificate<R>& cert,
                                     const AttainingFunctional<R>& f,
                                     const AttainingFunctional<R>& g, const Vec<R>& e) {
  using T = scalar_traits<R>;
  if (!T::eq(p_norm(spec, e), T::one()))
    throw PreconditionError("certificate_check: e must be a p-unit vector");
  if (!(cert.witness_x == f.witness) || !(cert.witness_z == g.witness))
    throw PreconditionError("certificate_check: certificate does not match the pair");
  for (int n : cert.cancel_indices) {
    if (n < 1 || n > spec.row_count())
      throw PreconditionError("certificate_check: certificate index out of range");
    if (T::sign(pairing(spec.rows[static_cast<std::size_t>(n - 1)], e)) != 0) return n;
  }
  return std::nullopt;
}

/// Structural re-validation of a certificate against a spec: the exact
/// sign equations, the strict cap separation, cap membership of every
/// cancelled index, and nonemptiness. Used by replay tooling.
template <class R>
bool validate_certificate(const SumNormSpec<R>& spec,
                          const NonAttainmentCertificate<R>& cert, std::string* why = nullptr) {
  using T = scalar_traits<R>;
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (cert.theta != 1 && cert.theta != -1) return fail("theta must be +1 or -1");
  if (cert.cancel_indices.empty()) return fail("empty cancel index set");
  const Vec<R> tz = cert.witness_z * T::from_long(cert.theta);
  if (cert.witness_x == tz) return fail("witnesses coincide for the chosen theta");
  if (!(T::sign(pairing(cert.cap_direction, cert.witness_x)) < 0))
    return fail("cap direction does not separate: y0(x) must be negative");
  if (!(T::sign(pairing(cert.cap_direction, tz)) > 0))
    return fail("cap direction does not separate: y0(theta z) must be positive");
  for (int n : cert.cancel_indices) {
    if (n < 1 || n > spec.row_count()) return fail("cancel index out of range");
    const auto& v = spec.rows[static_cast<std::size_t>(n - 1)];
    const int sx = T::sign(pairing(v, cert.witness_x));
    const int sz = T::sign(pairing(v, cert.witness_z)) * cert.theta;
    if (sx == 0 || sz == 0 || sx + sz != 0)
      return fail("sign equation fails at index " + std::to_string(n));
    const R dplus = l1_norm(v - cert.cap_direction);
    const R dminus = l1_norm(v + cert.cap_direction);
    if (!((dplus < dminus ? dplus : dminus) <= cert.cap_radius))
      return fail("row " + std::to_string(n) + " lies outside the cap");
  }
  return true;
}

enum class VerdictKind { attains, not_attains, unknown };

template <class R>
struct AttainmentVerdict {
  VerdictKind kind = VerdictKind::unknown;
  std::optional<Vec<R>> witness;
  std::optional<NonAttainmentCertificate<R>> certificate;
};

/// Symbolic functional representable at every truncation horizon.
template <class R>
struct SymbolicFunctional {
  enum class Kind { concrete, attaining, pair_combo };
  Kind kind = Kind::concrete;
  Vec<R> concrete;
  Vec<R> witness_x;
  Vec<R> witness_z;
  int theta = 1;
  TieRule tie = TieRule::lowest_index;

  static SymbolicFunctional from_vec(Vec<R> v) {
    SymbolicFunctional out;
    out.kind = Kind::concrete;
    out.concrete = std::move(v);
    return out;
  }
  static SymbolicFunctional attaining_at(Vec<R> witness_direction,
                                         TieRule tie_rule = TieRule::lowest_index) {
    SymbolicFunctional out;
    out.kind = Kind::attaining;
    out.witness_x = std::move(witness_direction);
    out.tie = tie_rule;
    return out;
  }
  static SymbolicFunctional combo(Vec<R> x_direction, Vec<R> z_direction, int th,
                                  TieRule tie_rule = TieRule::lowest_index) {
    SymbolicFunctional out;
    out.kind = Kind::pair_combo;
    out.witness_x = std::move(x_direction);
    out.witness_z = std::move(z_direction);
    out.theta = th;
    out.tie = tie_rule;
    return out;
  }
};

/// Family of truncation specs indexed by horizon (ambient dimension).
template <class R>
struct SpecFamily {
  std::function<std::shared_ptr<const SumNormSpec<R>>(int)> at;
};

namespace detail {

/// b = c a for some positive scalar c (equal supports, consistent ratio).
template <class R>
bool positively_proportional(const Vec<R>& a, const Vec<R>& b) {
  using T = scalar_traits<R>;
  if (a.dim() != b.dim() || a.support_size() != b.support_size()) return false;
  auto ia = a.entries().begin();
  auto ib = b.entries().begin();
  bool have_ratio = false;
  R ratio = T::zero();
  for (; ia != a.entries().end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    if (!have_ratio) {
      ratio = ib->second / ia->second;
      if (!(T::zero() < ratio)) return false;
      have_ratio = true;
    } else if (!T::eq(ib->second, ia->second * ratio)) {
      return false;
    }
  }
  return true;
}

template <class R>
AttainingFunctional<R> horizon_attaining(std::shared_ptr<const SumNormSpec<R>> spec,
                                         const Vec<R>& direction, TieRule tie) {
  using T = scalar_traits<R>;
  Vec<R> emb = direction.dim() < spec->dim ? direction.embedded(spec->dim) : direction;
  const R pn = p_norm(*spec, emb);
  if (T::is_zero(pn)) throw PreconditionError("zero witness direction");
  return make_attaining(spec, emb * (T::one() / pn), tie);
}

template <class R>
Vec<R> materialize(const SymbolicFunctional<R>& f,
                   std::shared_ptr<const SumNormSpec<R>> spec) {
  switch (f.kind) {
    case SymbolicFunctional<R>::Kind::concrete:
      return f.concrete.dim() < spec->dim ? f.concrete.embedded(spec->dim) : f.concrete;
    case SymbolicFunctional<R>::Kind::attaining:
      return horizon_attaining(spec, f.witness_x, f.tie).assembled();
    case SymbolicFunctional<R>::Kind::pair_combo: {
      auto ff = horizon_attaining(spec, f.witness_x, f.tie).assembled();
      auto gg = horizon_attaining(spec, f.witness_z, f.tie).assembled();
      return ff + gg * scalar_traits<R>::from_long(f.theta);
    }
  }
  throw PreconditionError("materialize: unknown symbolic kind");
}

}  // namespace detail

/// Stabilization sweep over growing truncations. Attains requires one
/// exact witness that maximizes at every horizon and passes the
/// attaining decomposition; NotAttains requires a refutation of every
/// computed maximizer at every horizon; anything else is Unknown.
template <class R>
AttainmentVerdict<R> attainment_verdict(const SpecFamily<R>& family,
                                        const SymbolicFunctional<R>& f,
                                        const std::vector<int>& horizons) {
  using T = scalar_traits<R>;
  if (horizons.empty()) throw PreconditionError("attainment_verdict: horizon list empty");
  std::vector<int> hs = horizons;
  std::sort(hs.begin(), hs.end());

  if (f.kind == SymbolicFunctional<R>::Kind::concrete && f.concrete.is_zero()) {
    AttainmentVerdict<R> out;
    out.kind = VerdictKind::attains;
    out.witness = Vec<R>(f.concrete.dim());
    return out;
  }

  const int top = hs.back();
  std::vector<Vec<R>> maximizers;
  std::vector<std::shared_ptr<const SumNormSpec<R>>> specs;
  bool attains_everywhere = true;
  Vec<R> stable_witness;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    auto spec = family.at(hs[i]);
    specs.push_back(spec);
    Vec<R> fh = detail::materialize(f, spec);
    if (fh.is_zero()) {
      attains_everywhere = false;
      break;
    }
    auto [value, x] = dual_norm_support(*spec, fh);
    maximizers.push_back(x.embedded(top));
    if (!attains_everywhere) continue;

    // Candidate witness: the carried witness direction when the
    // functional is symbolic-attaining (its support never moves),
    // otherwise the LP maximizer (stability checked across horizons).
    Vec<R> candidate = x;
    if (f.kind == SymbolicFunctional<R>::Kind::attaining) {
      candidate = detail::horizon_attaining(spec, f.witness_x, f.tie).witness;
      if (!T::eq(pairing(fh, candidate), value)) {
        attains_everywhere = false;
        continue;
      }
    }
    const auto rep = DualBallRep<R>::from_spec(*spec);
    if (!decompose_attaining(rep, fh * (T::one() / value), candidate)) {
      attains_everywhere = false;
      continue;
    }
    // Stability across horizons: the witness keeps its support and only
    // rescales (the per-horizon normalization moves with the row count).
    Vec<R> embedded = candidate.embedded(top);
    if (i == 0)
      stable_witness = embedded;
    else if (detail::positively_proportional(stable_witness, embedded))
      stable_witness = embedded;
    else
      attains_everywhere = false;
  }

  if (attains_everywhere && maximizers.size() == hs.size()) {
    AttainmentVerdict<R> out;
    out.kind = VerdictKind::attains;
    out.witness = stable_witness;
    return out;
  }

  if (f.kind == SymbolicFunctional<R>::Kind::pair_combo && maximizers.size() == hs.size()) {
    bool refuted_everywhere = true;
    std::optional<NonAttainmentCertificate<R>> last_cert;
    for (std::size_t i = 0; i < hs.size(); ++i) {
      auto spec = specs[i];
      auto ff = detail::horizon_attaining(spec, f.witness_x, f.tie);
      auto gg = detail::horizon_attaining(spec, f.witness_z, f.tie);
      auto cert = detail::certificate_for_theta(*spec, ff.witness, gg.witness, f.theta);
      if (!cert) {
        refuted_everywhere = false;
        break;
      }
      Vec<R> e = maximizers[i].truncated(spec->dim);
      if (!certificate_check(*spec, *cert, ff, gg, e)) {
        refuted_everywhere = false;
        break;
      }
      last_cert = std::move(cert);
    }
    if (refuted_everywhere && last_cert) {
      AttainmentVerdict<R> out;
      out.kind = VerdictKind::not_attains;
      out.certificate = std::move(last_cert);
      return out;
    }
  }

  return {};
}

}  // namespace normlab
