#pragma once

#include <gmpxx.h>

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>

#include "normlab/errors.hpp"

namespace normlab {

/// Exact rational scalar. All certificate arithmetic runs on this type.
using Rat = mpq_class;

/// Global comparison tolerance used by the float instantiation.
inline std::atomic<double>& float_tolerance() {
  static std::atomic<double> tol{1e-9};
  return tol;
}

/// 2^-k as an exact rational.
inline Rat pow2_inv(unsigned k) {
  mpz_class den = 1;
  den <<= k;
  return Rat(1, den);
}

/// q^k for integer k >= 0.
inline Rat rat_pow(const Rat& q, unsigned k) {
  Rat out = 1;
  Rat base = q;
  while (k != 0) {
    if (k & 1u) out *= base;
    base *= base;
    k >>= 1u;
  }
  return out;
}

/// Parses "p/q", integer, or plain decimal ("0.25") strings exactly.
inline Rat parse_rational(const std::string& text) {
  if (text.empty()) throw ConfigError("empty rational literal");
  const auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const std::size_t frac_len = text.size() - dot - 1;
    mpz_class num;
    if (num.set_str(digits, 10) != 0)
      throw ConfigError("bad decimal literal: " + text);
    mpz_class den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    Rat out(num, den);
    out.canonicalize();
    return out;
  }
  Rat out;
  if (out.set_str(text, 10) != 0 || sgn(out.get_den()) == 0)
    throw ConfigError("bad rational literal: " + text);
  out.canonicalize();
  return out;
}

/// Canonical "p/q" (or "p" when the denominator is one) rendering.
inline std::string rational_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Scalar traits: the one place the exact and float instantiations differ.
template <class R>
struct scalar_traits;

template <>
struct scalar_traits<Rat> {
  static constexpr bool exact = true;
  static Rat zero() { return Rat(0); }
  static Rat one() { return Rat(1); }
  static bool is_zero(const Rat& a) { return sgn(a) == 0; }
  static bool eq(const Rat& a, const Rat& b) { return a == b; }
  static bool leq(const Rat& a, const Rat& b) { return a <= b; }
  static int sign(const Rat& a) { return sgn(a); }
  static Rat abs(const Rat& a) { return ::abs(a); }
  static double to_double(const Rat& a) { return a.get_d(); }
  static Rat from_double(double d) { return Rat(d); }
  static Rat from_long(long n) { return Rat(n); }

  // Exact square root; throws when the value has no rational root.
  static Rat sqrt(const Rat& a) {
    if (sgn(a) < 0) throw PreconditionError("sqrt of negative rational");
    const mpz_class num = a.get_num(), den = a.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0 ||
        mpz_perfect_square_p(den.get_mpz_t()) == 0)
      throw ModeError("irrational square root in exact mode: " +
                      rational_string(a));
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return Rat(rn, rd);
  }

  static std::string str(const Rat& a) { return rational_string(a); }
  static Rat parse(const std::string& s) { return parse_rational(s); }
};

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static bool is_zero(double a) { return a == 0.0; }
  static bool eq(double a, double b) {
    const double tol = float_tolerance().load();
    return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
  }
  static bool leq(double a, double b) {
    return a <= b + float_tolerance().load();
  }
  static int sign(double a) { return (a > 0.0) - (a < 0.0); }
  static double abs(double a) { return std::fabs(a); }
  static double to_double(double a) { return a; }
  static double from_double(double d) { return d; }
  static double from_long(long n) { return static_cast<double>(n); }
  static double sqrt(double a) { return std::sqrt(a); }
  static std::string str(double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", a);
    return buf;
  }
  static double parse(const std::string& s) { return std::strtod(s.c_str(), nullptr); }
};

/// FNV-1a 64-bit content fingerprint; used for config/spec hashes in reports.
inline std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string hex_fingerprint(const std::string& bytes) {
  static const char* digits = "0123456789abcdef";
  std::uint64_t h = fnv1a64(bytes);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace normlab
