#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <ostream>

namespace optpot {

/// A real number or one of the two infinities. Ordering is total.
class Extended {
 public:
  enum class Kind { NegInf, Finite, PosInf };

  constexpr Extended() = default;
  // Infinite doubles map onto the tagged infinities.
  constexpr Extended(double v)  // NOLINT(google-explicit-constructor)
      : kind_(v == kInf ? Kind::PosInf : (v == -kInf ? Kind::NegInf : Kind::Finite)),
        value_(kind_ == Kind::Finite ? v : 0.0) {}

  static constexpr Extended pos_inf() { return Extended(Kind::PosInf); }
  static constexpr Extended neg_inf() { return Extended(Kind::NegInf); }

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_finite() const { return kind_ == Kind::Finite; }
  constexpr bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  constexpr bool is_neg_inf() const { return kind_ == Kind::NegInf; }

  /// Finite value; 0 for the infinities.
  constexpr double value() const { return value_; }

  double to_double() const {
    switch (kind_) {
      case Kind::PosInf: return std::numeric_limits<double>::infinity();
      case Kind::NegInf: return -std::numeric_limits<double>::infinity();
      default: return value_;
    }
  }

  friend constexpr std::partial_ordering operator<=>(const Extended& a, const Extended& b) {
    if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
    if (a.kind_ != Kind::Finite) return std::partial_ordering::equivalent;
    return a.value_ <=> b.value_;
  }
  friend constexpr bool operator==(const Extended& a, const Extended& b) {
    return (a <=> b) == 0;
  }

  friend std::ostream& operator<<(std::ostream& os, const Extended& e) {
    if (e.is_pos_inf()) return os << "+inf";
    if (e.is_neg_inf()) return os << "-inf";
    return os << e.value_;
  }

 private:
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  constexpr explicit Extended(Kind k) : kind_(k) {}

  Kind kind_ = Kind::Finite;
  double value_ = 0.0;
};

}  // namespace optpot
