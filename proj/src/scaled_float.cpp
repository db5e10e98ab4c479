#include "occkit/scaled_float.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "occkit/errors.hpp"

namespace occkit {

ScaledFloat::ScaledFloat(double value) {
  if (!std::isfinite(value)) throw DomainError("ScaledFloat: non-finite value");
  normalize(value, 0);
}

void ScaledFloat::normalize(double value, std::int64_t extra_exponent) {
  if (value == 0.0) {
    *this = ScaledFloat();
    return;
  }
  int e = 0;
  const double f = std::frexp(value, &e);  // |f| in [0.5, 1)
  sign_ = f < 0 ? -1 : 1;
  mantissa_ = std::fabs(f) * 2.0;
  exponent_ = static_cast<std::int64_t>(e - 1) + extra_exponent;
}

ScaledFloat ScaledFloat::from_log2(double log2_magnitude, int sign) {
  if (sign == 0 || log2_magnitude == -HUGE_VAL) return {};
  if (!std::isfinite(log2_magnitude)) throw DomainError("ScaledFloat: non-finite log2");
  const double whole = std::floor(log2_magnitude);
  ScaledFloat out;
  out.normalize(std::exp2(log2_magnitude - whole), static_cast<std::int64_t>(whole));
  out.sign_ = sign < 0 ? -1 : 1;
  return out;
}

double ScaledFloat::log2_abs() const {
  if (sign_ == 0) return -HUGE_VAL;
  return std::log2(mantissa_) + static_cast<double>(exponent_);
}

double ScaledFloat::log_abs() const {
  if (sign_ == 0) return -HUGE_VAL;
  return std::log(mantissa_) + static_cast<double>(exponent_) * std::numbers::ln2;
}

double ScaledFloat::to_double() const {
  if (sign_ == 0) return 0.0;
  if (exponent_ > std::numeric_limits<double>::max_exponent) {
    return sign_ * std::numeric_limits<double>::infinity();
  }
  if (exponent_ < std::numeric_limits<double>::min_exponent - 60) return 0.0 * sign_;
  return sign_ * std::ldexp(mantissa_, static_cast<int>(exponent_));
}

ScaledFloat ScaledFloat::pow(std::uint64_t power) const {
  ScaledFloat result(1.0);
  ScaledFloat base = *this;
  while (power > 0) {
    if (power & 1U) result *= base;
    power >>= 1U;
    if (power > 0) base *= base;
  }
  return result;
}

ScaledFloat& ScaledFloat::operator*=(const ScaledFloat& rhs) {
  if (sign_ == 0 || rhs.sign_ == 0) {
    *this = ScaledFloat();
    return *this;
  }
  const int s = sign_ * rhs.sign_;
  normalize(mantissa_ * rhs.mantissa_, exponent_ + rhs.exponent_);
  sign_ = s;
  return *this;
}

ScaledFloat& ScaledFloat::operator/=(const ScaledFloat& rhs) {
  if (rhs.sign_ == 0) throw DomainError("ScaledFloat: division by zero");
  if (sign_ == 0) return *this;
  const int s = sign_ * rhs.sign_;
  normalize(mantissa_ / rhs.mantissa_, exponent_ - rhs.exponent_);
  sign_ = s;
  return *this;
}

ScaledFloat& ScaledFloat::operator+=(const ScaledFloat& rhs) {
  if (rhs.sign_ == 0) return *this;
  if (sign_ == 0) {
    *this = rhs;
    return *this;
  }
  const ScaledFloat& big = exponent_ >= rhs.exponent_ ? *this : rhs;
  const ScaledFloat& small = exponent_ >= rhs.exponent_ ? rhs : *this;
  const std::int64_t gap = big.exponent_ - small.exponent_;
  if (gap > 64) {
    *this = big;
    return *this;
  }
  const double sum = big.sign_ * big.mantissa_ +
                     small.sign_ * std::ldexp(small.mantissa_, -static_cast<int>(gap));
  normalize(sum, big.exponent_);
  return *this;
}

ScaledFloat& ScaledFloat::operator-=(const ScaledFloat& rhs) { return *this += -rhs; }

bool operator<(const ScaledFloat& a, const ScaledFloat& b) {
  if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
  if (a.sign_ == 0) return false;
  const bool mag_less = a.exponent_ != b.exponent_ ? a.exponent_ < b.exponent_ : a.mantissa_ < b.mantissa_;
  const bool mag_equal = a.exponent_ == b.exponent_ && a.mantissa_ == b.mantissa_;
  if (mag_equal) return false;
  return a.sign_ > 0 ? mag_less : !mag_less;
}

std::ostream& operator<<(std::ostream& os, const ScaledFloat& x) {
  if (x.is_zero()) return os << "0";
  return os << (x.sign() < 0 ? "-" : "") << x.mantissa() << "*2^" << x.exponent();
}

double relative_difference(const ScaledFloat& a, const ScaledFloat& b) {
  if (b.is_zero()) return a.is_zero() ? 0.0 : HUGE_VAL;
  const ScaledFloat diff = a - b;
  if (diff.is_zero()) return 0.0;
  return std::exp2(diff.log2_abs() - b.log2_abs());
}

}  // namespace occkit
