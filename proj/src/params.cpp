#include "occkit/params.hpp"

#include <charconv>
#include <cmath>

#include "occkit/errors.hpp"

namespace occkit {

namespace {

void check_theta(double theta) {
  if (!(theta > 0.0 && theta <= 1.0)) throw DomainError("theta must lie in (0, 1]");
}

}  // namespace

BinCount BinCount::parse(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return infinite();
  std::uint64_t m = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), m);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw DomainError("bin count must be a positive integer or 'inf', got '" + std::string(text) + "'");
  }
  if (m == 0) throw DomainError("number of bins m must be >= 1");
  return BinCount(m);
}

std::uint64_t BinCount::value() const {
  if (is_infinite()) throw DomainError("operation requires a finite number of bins");
  return value_;
}

std::string BinCount::str() const { return is_infinite() ? "inf" : std::to_string(value_); }

OccParams::OccParams(std::uint64_t n, BinCount m, double theta) : n_(n), m_(m), theta_(theta) {
  if (!m.is_infinite() && m.value() == 0) throw DomainError("number of bins m must be >= 1");
  check_theta(theta);
}

OccParams OccParams::degenerate(std::uint64_t n, BinCount m) {
  if (!m.is_infinite() && m.value() == 0) throw DomainError("number of bins m must be >= 1");
  return OccParams(n, m);
}

std::uint64_t OccParams::k_max() const { return m_.is_infinite() ? n_ : std::min(n_, m_.value()); }

NegOccParams::NegOccParams(BinCount m, std::uint64_t k, double theta) : m_(m), k_(k), theta_(theta) {
  if (!m.is_infinite() && m.value() == 0) throw DomainError("number of bins m must be >= 1");
  if (k == 0) throw DomainError("occupancy parameter k must be >= 1");
  if (!m.is_infinite() && k > m.value()) throw DomainError("occupancy parameter k must not exceed m");
  check_theta(theta);
}

SpillageParams::SpillageParams(std::uint64_t n, std::uint64_t k, double phi) : n_(n), k_(k), phi_(phi) {
  if (k > n) throw DomainError("occupancy parameter k must not exceed n");
  if (std::isnan(phi) || phi < 0.0) throw DomainError("scale parameter phi must be >= 0");
}

double spillage_scale(BinCount m, double theta) {
  check_theta(theta);
  if (theta == 1.0) return 0.0;
  if (m.is_infinite()) return std::numeric_limits<double>::infinity();
  return static_cast<double>(m.value()) * (1.0 - theta) / theta;
}

}  // namespace occkit
