// tropical.hpp — max-plus semiring arithmetic.
//
// TropicalReal<R> is R ∪ {-inf} under (max, +):
//
//   a ⊕ b = max(a, b)     neutral element: -inf (the bottom)
//   a ⊙ b = a + b         neutral element: 0,  absorbing element: -inf
//
// The bottom element is an explicit tagged state, never a sentinel float, so
// the semiring laws hold exactly in both number kinds and an empty tropical
// sum has a genuine identity.  operator+ and operator* follow the usual
// semiring-class convention (⊕ and ⊙); t_add / t_mul / t_sum are the named
// equivalents.

#pragma once

#include <initializer_list>
#include <ostream>
#include <utility>

#include "tropic/errors.hpp"
#include "tropic/numbers.hpp"

namespace tropic {

template <NumberKind R>
class TropicalReal {
 public:
  // Default construction yields the additive identity -inf.
  TropicalReal() : finite_(false), value_() {}
  TropicalReal(R value) : finite_(true), value_(std::move(value)) {}

  static TropicalReal bottom() { return TropicalReal(); }
  static TropicalReal one() { return TropicalReal(R(0)); }

  bool is_bottom() const { return !finite_; }

  const R& value() const {
    if (!finite_) throw BadArgumentError("tropical value is -inf");
    return value_;
  }

  friend bool operator==(const TropicalReal& a, const TropicalReal& b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.value_ == b.value_;
  }

  // ⊕ : max, with -inf neutral
  TropicalReal& operator+=(const TropicalReal& other) {
    if (!other.finite_) return *this;
    if (!finite_ || value_ < other.value_) *this = other;
    return *this;
  }

  // ⊙ : +, with -inf absorbing
  TropicalReal& operator*=(const TropicalReal& other) {
    if (!finite_) return *this;
    if (!other.finite_) {
      finite_ = false;
      value_ = R();
    } else {
      value_ += other.value_;
    }
    return *this;
  }

  friend TropicalReal operator+(TropicalReal a, const TropicalReal& b) {
    a += b;
    return a;
  }

  friend TropicalReal operator*(TropicalReal a, const TropicalReal& b) {
    a *= b;
    return a;
  }

  friend std::ostream& operator<<(std::ostream& os, const TropicalReal& x) {
    if (x.finite_)
      os << x.value_;
    else
      os << "-inf";
    return os;
  }

 private:
  bool finite_;
  R value_;
};

template <NumberKind R>
TropicalReal<R> t_add(const TropicalReal<R>& a, const TropicalReal<R>& b) {
  return a + b;
}

template <NumberKind R>
TropicalReal<R> t_mul(const TropicalReal<R>& a, const TropicalReal<R>& b) {
  return a * b;
}

// Tropical sum of a sequence: the maximum, or -inf for an empty sequence.
template <class Range>
auto t_sum(const Range& values) {
  using T = std::decay_t<decltype(*std::begin(values))>;
  T acc = T::bottom();
  for (const auto& v : values) acc += v;
  return acc;
}

template <NumberKind R>
TropicalReal<R> t_sum(std::initializer_list<TropicalReal<R>> values) {
  TropicalReal<R> acc;
  for (const auto& v : values) acc += v;
  return acc;
}

}  // namespace tropic
