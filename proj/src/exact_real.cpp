#include "occkit/exact_real.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <ostream>

#include "occkit/errors.hpp"

namespace occkit {

namespace {

double log2_mpz(const mpz_class& z) {
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, z.get_mpz_t());
  return std::log2(std::fabs(mantissa)) + static_cast<double>(exponent);
}

std::size_t budget_from_env() {
  if (const char* env = std::getenv("OCCKIT_EXACT_DIGIT_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 1'000'000;
}

std::atomic<std::size_t>& budget_slot() {
  static std::atomic<std::size_t> budget{budget_from_env()};
  return budget;
}

}  // namespace

ExactReal::ExactReal(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) throw DomainError("ExactReal: zero denominator");
  mpz_class num;
  mpz_class den;
  mpz_set_si(num.get_mpz_t(), static_cast<long>(numerator));
  mpz_set_si(den.get_mpz_t(), static_cast<long>(denominator));
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

ExactReal::ExactReal(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

ExactReal ExactReal::from_double(double value) {
  if (!std::isfinite(value)) throw DomainError("ExactReal: non-finite value");
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), value);
  return ExactReal(std::move(q));
}

ExactReal ExactReal::from_uint(std::uint64_t value) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, -1, sizeof(value), 0, 0, &value);
  return ExactReal(mpq_class(z));
}

ExactReal ExactReal::parse(std::string_view text) {
  const auto fail = [&]() -> ExactReal {
    throw DomainError("cannot parse '" + std::string(text) + "' as an exact rational");
  };
  if (text.empty()) return fail();

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const ExactReal num = parse(text.substr(0, slash));
    const ExactReal den = parse(text.substr(slash + 1));
    if (den.is_zero()) return fail();
    return num / den;
  }

  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  long scale = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) ++scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) return fail();
  long exponent = 0;
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') return fail();
    ++pos;
    const std::string rest(text.substr(pos));
    if (rest.empty()) return fail();
    char* end = nullptr;
    exponent = std::strtol(rest.c_str(), &end, 10);
    if (*end != '\0') return fail();
  }
  const long shift = exponent - scale;
  mpz_class mantissa(digits, 10);
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  mpq_class q = shift >= 0 ? mpq_class(mantissa * ten_pow) : mpq_class(mantissa, ten_pow);
  q.canonicalize();
  if (negative) q = -q;
  return ExactReal(std::move(q));
}

// mpq_get_d truncates toward zero; pick whichever neighbour is nearer, ties to even.
double ExactReal::to_double() const {
  const double truncated = value_.get_d();
  if (std::isinf(truncated) || is_zero()) return truncated;
  const double away = std::nextafter(truncated, sign() > 0 ? HUGE_VAL : -HUGE_VAL);
  const mpq_class exact_truncated(truncated);
  if (exact_truncated == value_) return truncated;
  const mpq_class below = abs(value_ - exact_truncated);
  mpq_class above;
  if (std::isinf(away)) {
    mpz_class limit(1);
    limit <<= 1024;
    above = abs(mpq_class(sign() > 0 ? limit : mpz_class(-limit)) - value_);
  } else {
    above = abs(mpq_class(away) - value_);
  }
  if (below < above) return truncated;
  if (above < below) return away;
  int exponent = 0;
  const double frac = std::frexp(truncated, &exponent);
  const auto bits = static_cast<std::uint64_t>(std::ldexp(std::fabs(frac), 53));
  return (bits % 2 == 0) ? truncated : away;
}

double ExactReal::log2_abs() const {
  if (is_zero()) return -HUGE_VAL;
  return log2_mpz(value_.get_num()) - log2_mpz(value_.get_den());
}

std::string ExactReal::str() const { return value_.get_str(); }

std::size_t ExactReal::digits() const {
  return std::max(mpz_sizeinbase(value_.get_num_mpz_t(), 10),
                  mpz_sizeinbase(value_.get_den_mpz_t(), 10));
}

ExactReal ExactReal::pow(std::uint64_t exponent) const {
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), exponent);
  // Powers of a reduced fraction stay reduced.
  mpq_class q;
  mpq_set_num(q.get_mpq_t(), num.get_mpz_t());
  mpq_set_den(q.get_mpq_t(), den.get_mpz_t());
  ExactReal out;
  out.value_ = std::move(q);
  return out;
}

ExactReal& ExactReal::operator+=(const ExactReal& rhs) {
  value_ += rhs.value_;
  return *this;
}
ExactReal& ExactReal::operator-=(const ExactReal& rhs) {
  value_ -= rhs.value_;
  return *this;
}
ExactReal& ExactReal::operator*=(const ExactReal& rhs) {
  value_ *= rhs.value_;
  return *this;
}
ExactReal& ExactReal::operator/=(const ExactReal& rhs) {
  if (rhs.is_zero()) throw DomainError("ExactReal: division by zero");
  value_ /= rhs.value_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const ExactReal& x) { return os << x.str(); }

std::size_t exact_digit_budget() { return budget_slot().load(std::memory_order_relaxed); }

void set_exact_digit_budget(std::size_t digits) {
  budget_slot().store(digits == 0 ? budget_from_env() : digits, std::memory_order_relaxed);
}

void enforce_digit_budget(const ExactReal& x, std::string_view context) {
  // sizeinbase may overestimate by one digit; that slack is harmless here.
  if (x.digits() > exact_digit_budget()) {
    throw ResourceLimitError(std::string(context) + ": exact value exceeds digit budget of " +
                             std::to_string(exact_digit_budget()) + " digits");
  }
}

ExactReal exact_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return ExactReal(0);
  mpz_class z;
  mpz_bin_uiui(z.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return ExactReal(mpq_class(z));
}

}  // namespace occkit
