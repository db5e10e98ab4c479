#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace occkit {

/// Arbitrary-precision rational number, always held in lowest terms with a
/// positive denominator.
class ExactReal {
 public:
  ExactReal() = default;
  ExactReal(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  ExactReal(int value) : value_(value) {}   // NOLINT(google-explicit-constructor)
  ExactReal(std::int64_t numerator, std::int64_t denominator);
  explicit ExactReal(mpq_class value);

  /// Exact value of a finite double (every finite double is a dyadic rational).
  static ExactReal from_double(double value);
  /// Parses "p", "p/q" or a decimal literal such as "0.3" or "-1.25e-2" exactly.
  static ExactReal parse(std::string_view text);
  static ExactReal from_uint(std::uint64_t value);

  const mpq_class& raw() const { return value_; }
  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }

  double to_double() const;
  /// log2(|x|); -inf for zero. Accurate even when the value overflows a double.
  double log2_abs() const;
  std::string str() const;
  /// Decimal digits of max(|numerator|, denominator).
  std::size_t digits() const;
  int sign() const { return sgn(value_); }
  bool is_zero() const { return sgn(value_) == 0; }

  ExactReal pow(std::uint64_t exponent) const;

  ExactReal& operator+=(const ExactReal& rhs);
  ExactReal& operator-=(const ExactReal& rhs);
  ExactReal& operator*=(const ExactReal& rhs);
  ExactReal& operator/=(const ExactReal& rhs);

  friend ExactReal operator+(ExactReal a, const ExactReal& b) { return a += b; }
  friend ExactReal operator-(ExactReal a, const ExactReal& b) { return a -= b; }
  friend ExactReal operator*(ExactReal a, const ExactReal& b) { return a *= b; }
  friend ExactReal operator/(ExactReal a, const ExactReal& b) { return a /= b; }
  friend ExactReal operator-(const ExactReal& a) { return ExactReal(mpq_class(-a.value_)); }

  friend bool operator==(const ExactReal& a, const ExactReal& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const ExactReal& a, const ExactReal& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const ExactReal& x);

/// Digit budget for exact computations. Defaults to 10^6 decimal digits and can
/// be overridden by the OCCKIT_EXACT_DIGIT_BUDGET environment variable.
std::size_t exact_digit_budget();
void set_exact_digit_budget(std::size_t digits);

/// Throws ResourceLimitError when `x` is wider than the digit budget.
void enforce_digit_budget(const ExactReal& x, std::string_view context);

/// Binomial coefficient C(n, k) as an exact integer; zero when k > n.
ExactReal exact_binomial(std::uint64_t n, std::uint64_t k);

}  // namespace occkit
