#pragma once

#include <vector>

#include "normlab/rational.hpp"

namespace normlab {

/// Dense univariate polynomial, coefficients in ascending degree order.
/// The trailing coefficient is nonzero unless the polynomial is zero.
/// With R = Rat this is the computable stand-in for functions of the
/// real-coefficient disc algebra: dense, exactly evaluable at rational
/// points, and with a root count bounded by the degree.
template <class R>
class Poly {
 public:
  using Traits = scalar_traits<R>;

  Poly() = default;
  explicit Poly(std::vector<R> coefficients) : coef_(std::move(coefficients)) {
    trim();
  }

  static Poly zero() { return Poly(); }
  static Poly constant(const R& c) { return Poly({c}); }
  /// c * z^k
  static Poly monomial(const R& c, int k) {
    std::vector<R> v(static_cast<std::size_t>(k) + 1, Traits::zero());
    v.back() = c;
    return Poly(std::move(v));
  }

  bool is_zero() const { return coef_.empty(); }
  int degree() const { return static_cast<int>(coef_.size()) - 1; }
  const std::vector<R>& coefficients() const { return coef_; }

  R eval(const R& x) const {
    R acc = Traits::zero();
    for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Poly operator+(const Poly& o) const {
    std::vector<R> out(std::max(coef_.size(), o.coef_.size()), Traits::zero());
    for (std::size_t i = 0; i < coef_.size(); ++i) out[i] += coef_[i];
    for (std::size_t i = 0; i < o.coef_.size(); ++i) out[i] += o.coef_[i];
    return Poly(std::move(out));
  }

  Poly operator-(const Poly& o) const {
    std::vector<R> out(std::max(coef_.size(), o.coef_.size()), Traits::zero());
    for (std::size_t i = 0; i < coef_.size(); ++i) out[i] += coef_[i];
    for (std::size_t i = 0; i < o.coef_.size(); ++i) out[i] -= o.coef_[i];
    return Poly(std::move(out));
  }

  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return zero();
    std::vector<R> out(coef_.size() + o.coef_.size() - 1, Traits::zero());
    for (std::size_t i = 0; i < coef_.size(); ++i)
      for (std::size_t j = 0; j < o.coef_.size(); ++j)
        out[i + j] += coef_[i] * o.coef_[j];
    return Poly(std::move(out));
  }

  Poly pow(unsigned n) const {
    Poly out = constant(Traits::one());
    Poly base = *this;
    while (n != 0) {
      if (n & 1u) out = out * base;
      base = base * base;
      n >>= 1u;
    }
    return out;
  }

  bool operator==(const Poly& o) const { return coef_ == o.coef_; }

 private:
  void trim() {
    while (!coef_.empty() && Traits::is_zero(coef_.back())) coef_.pop_back();
  }
  std::vector<R> coef_;
};

}  // namespace normlab
