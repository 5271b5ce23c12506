#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <optional>

namespace denjoy {

/// A real coordinate that may also be -inf or +inf. Only comparisons are
/// defined; callers that need arithmetic must ask for the finite value.
class ExtendedReal {
 public:
  enum class Kind { NegInf, Finite, PosInf };

  constexpr ExtendedReal() = default;
  constexpr ExtendedReal(double v) : kind_(Kind::Finite), value_(v) {}  // NOLINT

  static constexpr ExtendedReal neg_inf() { return ExtendedReal(Kind::NegInf); }
  static constexpr ExtendedReal pos_inf() { return ExtendedReal(Kind::PosInf); }

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_finite() const { return kind_ == Kind::Finite; }
  constexpr bool is_neg_inf() const { return kind_ == Kind::NegInf; }
  constexpr bool is_pos_inf() const { return kind_ == Kind::PosInf; }

  /// Finite value; meaningless for infinite endpoints.
  constexpr double value() const { return value_; }

  /// IEEE view, only for places where an inf sentinel is what we want
  /// (e.g. distance computations that take a min).
  double as_double() const {
    switch (kind_) {
      case Kind::NegInf: return -std::numeric_limits<double>::infinity();
      case Kind::PosInf: return std::numeric_limits<double>::infinity();
      default: return value_;
    }
  }

  friend constexpr std::partial_ordering operator<=>(const ExtendedReal& a,
                                                     const ExtendedReal& b) {
    if (a.kind_ != b.kind_) {
      return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
    }
    if (a.kind_ != Kind::Finite) return std::partial_ordering::equivalent;
    return a.value_ <=> b.value_;
  }
  friend constexpr bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    return (a <=> b) == std::partial_ordering::equivalent;
  }

 private:
  constexpr explicit ExtendedReal(Kind k) : kind_(k) {}

  Kind kind_ = Kind::Finite;
  double value_ = 0.0;
};

}  // namespace denjoy
