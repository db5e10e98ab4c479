#pragma once

#include <cstdint>
#include <iosfwd>

namespace occkit {

/// sign * mantissa * 2^exponent with mantissa in [1, 2).
///
/// Used for Stirling values far outside the double range. Products and sums
/// of same-sign values cannot overflow for exponents within +-2^62.
class ScaledFloat {
 public:
  constexpr ScaledFloat() = default;
  ScaledFloat(double value);  // NOLINT(google-explicit-constructor)

  static ScaledFloat from_log2(double log2_magnitude, int sign = 1);
  static ScaledFloat zero() { return {}; }

  int sign() const { return sign_; }
  double mantissa() const { return mantissa_; }
  std::int64_t exponent() const { return exponent_; }
  bool is_zero() const { return sign_ == 0; }

  /// log2(|x|) = log2(mantissa) + exponent; -inf for zero.
  double log2_abs() const;
  /// Natural log of |x|; -inf for zero.
  double log_abs() const;
  /// Nearest double; saturates to +-inf / 0 outside the double range.
  double to_double() const;

  ScaledFloat pow(std::uint64_t power) const;

  ScaledFloat& operator+=(const ScaledFloat& rhs);
  ScaledFloat& operator-=(const ScaledFloat& rhs);
  ScaledFloat& operator*=(const ScaledFloat& rhs);
  ScaledFloat& operator/=(const ScaledFloat& rhs);

  friend ScaledFloat operator+(ScaledFloat a, const ScaledFloat& b) { return a += b; }
  friend ScaledFloat operator-(ScaledFloat a, const ScaledFloat& b) { return a -= b; }
  friend ScaledFloat operator*(ScaledFloat a, const ScaledFloat& b) { return a *= b; }
  friend ScaledFloat operator/(ScaledFloat a, const ScaledFloat& b) { return a /= b; }
  friend ScaledFloat operator-(ScaledFloat a) {
    a.sign_ = -a.sign_;
    return a;
  }

  friend bool operator==(const ScaledFloat& a, const ScaledFloat& b) {
    return a.sign_ == b.sign_ && (a.sign_ == 0 || (a.mantissa_ == b.mantissa_ && a.exponent_ == b.exponent_));
  }
  friend bool operator<(const ScaledFloat& a, const ScaledFloat& b);
  friend bool operator>(const ScaledFloat& a, const ScaledFloat& b) { return b < a; }
  friend bool operator<=(const ScaledFloat& a, const ScaledFloat& b) { return !(b < a); }
  friend bool operator>=(const ScaledFloat& a, const ScaledFloat& b) { return !(a < b); }

 private:
  void normalize(double value, std::int64_t extra_exponent);

  int sign_ = 0;
  double mantissa_ = 0.0;
  std::int64_t exponent_ = 0;
};

std::ostream& operator<<(std::ostream& os, const ScaledFloat& x);

/// Relative difference |a - b| / |b| (0 when both are zero).
double relative_difference(const ScaledFloat& a, const ScaledFloat& b);

}  // namespace occkit
