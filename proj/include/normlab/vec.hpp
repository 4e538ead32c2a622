#pragma once

#include <map>
#include <utility>
#include <vector>

#include "normlab/errors.hpp"
#include "normlab/rational.hpp"

namespace normlab {

/// Finitely supported coordinate vector with 1-based indices.
///
/// Entries are stored sparsely; a stored entry is never zero, so support
/// queries and sign scans are exact by construction. The ambient dimension
/// bounds every index and models the truncation of c0 / l1 / l2 / l-inf.
template <class R>
class Vec {
 public:
  using Traits = scalar_traits<R>;

  Vec() = default;
  explicit Vec(int ambient_dim) : dim_(ambient_dim) {
    if (ambient_dim < 1) throw PreconditionError("ambient dimension must be >= 1");
  }

  static Vec basis(int n, int ambient_dim) {
    Vec v(ambient_dim);
    v.set(n, Traits::one());
    return v;
  }

  static Vec from_dense(const std::vector<R>& coords) {
    Vec v(static_cast<int>(coords.size()));
    for (int i = 0; i < static_cast<int>(coords.size()); ++i)
      v.set(i + 1, coords[static_cast<std::size_t>(i)]);
    return v;
  }

  int dim() const { return dim_; }
  const std::map<int, R>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  int support_size() const { return static_cast<int>(entries_.size()); }

  R get(int index) const {
    check_index(index);
    auto it = entries_.find(index);
    return it == entries_.end() ? Traits::zero() : it->second;
  }

  void set(int index, const R& value) {
    check_index(index);
    if (Traits::is_zero(value))
      entries_.erase(index);
    else
      entries_[index] = value;
  }

  /// Re-embeds into a larger ambient dimension (entries unchanged).
  Vec embedded(int new_dim) const {
    if (new_dim < dim_) throw PreconditionError("cannot shrink ambient dimension");
    Vec out = *this;
    out.dim_ = new_dim;
    return out;
  }

  /// Drops coordinates beyond new_dim.
  Vec truncated(int new_dim) const {
    Vec out(new_dim);
    for (const auto& [i, v] : entries_)
      if (i <= new_dim) out.set(i, v);
    return out;
  }

  Vec& operator+=(const Vec& o) {
    check_same_dim(o);
    for (const auto& [i, v] : o.entries_) set(i, get(i) + v);
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    check_same_dim(o);
    for (const auto& [i, v] : o.entries_) set(i, get(i) - v);
    return *this;
  }
  Vec& operator*=(const R& c) {
    if (Traits::is_zero(c)) {
      entries_.clear();
      return *this;
    }
    for (auto& [i, v] : entries_) v = v * c;
    return *this;
  }

  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(Vec a, const R& c) { return a *= c; }
  friend Vec operator*(const R& c, Vec a) { return a *= c; }
  friend Vec operator-(Vec a) { return a *= R(-1); }

  /// Adds c*o in place.
  Vec& axpy(const R& c, const Vec& o) {
    check_same_dim(o);
    if (Traits::is_zero(c)) return *this;
    for (const auto& [i, v] : o.entries_) set(i, get(i) + c * v);
    return *this;
  }

  bool operator==(const Vec& o) const {
    return dim_ == o.dim_ && entries_ == o.entries_;
  }
  bool operator!=(const Vec& o) const { return !(*this == o); }

  std::vector<R> dense() const {
    std::vector<R> out(static_cast<std::size_t>(dim_), Traits::zero());
    for (const auto& [i, v] : entries_) out[static_cast<std::size_t>(i - 1)] = v;
    return out;
  }

 private:
  void check_index(int index) const {
    if (index < 1 || index > dim_)
      throw DimensionMismatch("index " + std::to_string(index) +
                              " outside ambient dimension " + std::to_string(dim_));
  }
  void check_same_dim(const Vec& o) const {
    if (dim_ != o.dim_) throw DimensionMismatch("ambient dimensions differ");
  }

  std::map<int, R> entries_;
  int dim_ = 0;
};

enum class NormKind { sup, l1, l2 };

template <class R>
R sup_norm(const Vec<R>& v) {
  using T = scalar_traits<R>;
  R best = T::zero();
  for (const auto& [i, x] : v.entries()) {
    R a = T::abs(x);
    if (best < a) best = a;
  }
  return best;
}

template <class R>
R l1_norm(const Vec<R>& v) {
  using T = scalar_traits<R>;
  R sum = T::zero();
  for (const auto& [i, x] : v.entries()) sum += T::abs(x);
  return sum;
}

/// l2 norm; in exact mode this throws ModeError unless the sum of squares
/// is a perfect rational square.
template <class R>
R l2_norm(const Vec<R>& v) {
  using T = scalar_traits<R>;
  R sum = T::zero();
  for (const auto& [i, x] : v.entries()) sum += x * x;
  return T::sqrt(sum);
}

template <class R>
R norm_value(const Vec<R>& v, NormKind which) {
  switch (which) {
    case NormKind::sup: return sup_norm(v);
    case NormKind::l1: return l1_norm(v);
    case NormKind::l2: return l2_norm(v);
  }
  throw PreconditionError("unknown norm kind");
}

/// Duality pairing f(x) = sum f_i x_i over the common support.
template <class R>
R pairing(const Vec<R>& f, const Vec<R>& x) {
  if (f.dim() != x.dim()) throw DimensionMismatch("pairing: ambient dimensions differ");
  using T = scalar_traits<R>;
  R sum = T::zero();
  const auto& small = f.support_size() <= x.support_size() ? f : x;
  const auto& large = f.support_size() <= x.support_size() ? x : f;
  for (const auto& [i, v] : small.entries()) {
    auto it = large.entries().find(i);
    if (it != large.entries().end()) sum += v * it->second;
  }
  return sum;
}

}  // namespace normlab
