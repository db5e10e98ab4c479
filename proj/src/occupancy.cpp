#include "occkit/occupancy.hpp"

#include <cmath>
#include <limits>

#include "occkit/detail/occupancy_recursion.hpp"
#include "occkit/errors.hpp"
#include "occkit/reference.hpp"
#include "occkit/stirling.hpp"

namespace occkit {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr double nan = std::numeric_limits<double>::quiet_NaN();

void check_exact_theta(const ExactReal& theta) {
  if (theta.sign() <= 0 || theta > ExactReal(1)) throw DomainError("theta must lie in (0, 1]");
}

MomentSet binomial_moments(double n, double theta) {
  MomentSet out;
  out.mean = n * theta;
  out.variance = n * theta * (1.0 - theta);
  if (out.variance > 0.0) {
    out.skewness = (1.0 - 2.0 * theta) / std::sqrt(out.variance);
    out.kurtosis = 3.0 + (1.0 - 6.0 * theta * (1.0 - theta)) / out.variance;
  } else {
    out.skewness = nan;
    out.kurtosis = nan;
  }
  return out;
}

MomentSet zero_moments() {
  MomentSet out;
  out.skewness = nan;
  out.kurtosis = nan;
  return out;
}

}  // namespace

Pmf occ_pmf(const OccParams& p) {
  if (p.is_degenerate()) return Pmf::point_mass(0, "degenerate");
  if (p.m().is_infinite()) return binomial_pmf(p.n(), p.theta());
  detail::OccupancyRecursion<double> chain(p.m().value(), p.theta(), 0, p.k_max() + 1);
  chain.advance(p.n());
  const double bound = 4.0 * static_cast<double>(p.n() + 1) * eps;
  return Pmf(0, chain.probabilities(), PmfMeta{"recursion", bound, 0.0});
}

Pmf occ_pmf_stirling(const OccParams& p) {
  if (p.is_degenerate()) return Pmf::point_mass(0, "degenerate");
  const std::uint64_t m = p.m().value();
  const double phi = spillage_scale(p.m(), p.theta());
  const auto row = stirling_row_scaled(p.n(), p.k_max(), phi);
  const ScaledFloat bins(static_cast<double>(m));
  ScaledFloat weight = (ScaledFloat(p.theta()) / bins).pow(p.n());  // theta^n / m^n (m)_k
  std::vector<double> probs(row.size(), 0.0);
  for (std::size_t k = 0; k < row.size(); ++k) {
    probs[k] = (weight * row[k]).to_double();
    weight *= ScaledFloat(static_cast<double>(m - k));
  }
  const double bound = 8.0 * static_cast<double>(p.n() + 2) * eps;
  return Pmf(0, std::move(probs), PmfMeta{"stirling-scaled", bound, 0.0});
}

ExactPmf occ_pmf_exact(std::uint64_t n, std::uint64_t m, const ExactReal& theta) {
  if (m == 0) throw DomainError("number of bins m must be >= 1");
  check_exact_theta(theta);
  const ExactReal bins = ExactReal::from_uint(m);
  const ExactReal phi = bins * (ExactReal(1) - theta) / theta;
  const auto row = stirling_row_exact(n, std::min(n, m), phi);
  ExactReal weight = (theta / bins).pow(n);
  ExactPmf out;
  out.probabilities.reserve(row.size());
  for (std::size_t k = 0; k < row.size(); ++k) {
    out.probabilities.push_back(weight * row[k]);
    weight *= ExactReal::from_uint(m - k);
  }
  return out;
}

ExactPmf occ_pmf_exact_by_recursion(std::uint64_t n, std::uint64_t m, const ExactReal& theta) {
  if (m == 0) throw DomainError("number of bins m must be >= 1");
  check_exact_theta(theta);
  detail::OccupancyRecursion<ExactReal> chain(m, theta, 0, std::min(n, m) + 1);
  for (std::uint64_t i = 0; i < n; ++i) {
    chain.step();
    for (const auto& x : chain.probabilities()) enforce_digit_budget(x, "occ_pmf_exact_by_recursion");
  }
  return ExactPmf{0, chain.probabilities()};
}

Pmf occ_conditional_pmf(std::uint64_t n_new, std::uint64_t m, double theta, std::uint64_t t) {
  if (m == 0) throw DomainError("number of bins m must be >= 1");
  if (t > m) throw DomainError("current occupancy t must not exceed m");
  if (!(theta > 0.0 && theta <= 1.0)) throw DomainError("theta must lie in (0, 1]");
  if (t == m) return Pmf::point_mass(static_cast<std::int64_t>(m), "recursion");
  const double reduced = theta * static_cast<double>(m - t) / static_cast<double>(m);
  return occ_pmf(OccParams(n_new, m - t, reduced)).shifted(static_cast<std::int64_t>(t));
}

double occ_cdf(const OccParams& p, std::int64_t k) { return occ_pmf(p).cdf(k); }

double occ_factorial_moment(const OccParams& p, std::uint64_t r) {
  const std::uint64_t m = p.m().value();
  if (r > m) return 0.0;
  double falling = 1.0;
  for (std::uint64_t i = 0; i < r; ++i) falling *= static_cast<double>(m - i);
  const double base = 1.0 - p.theta() * static_cast<double>(r) / static_cast<double>(m);
  return falling * std::pow(base, static_cast<double>(p.n()));
}

ExactReal occ_factorial_moment_exact(std::uint64_t n, std::uint64_t m, const ExactReal& theta, std::uint64_t r) {
  if (m == 0) throw DomainError("number of bins m must be >= 1");
  check_exact_theta(theta);
  if (r > m) return ExactReal(0);
  ExactReal falling(1);
  for (std::uint64_t i = 0; i < r; ++i) falling *= ExactReal::from_uint(m - i);
  const ExactReal base = ExactReal(1) - theta * ExactReal::from_uint(r) / ExactReal::from_uint(m);
  return falling * base.pow(n);
}

namespace {

MomentSet moments_from_e(long double m, long double e1, long double e2, long double e3, long double e4) {
  MomentSet out;
  out.e_terms = {static_cast<double>(e1), static_cast<double>(e2), static_cast<double>(e3), static_cast<double>(e4)};
  const long double m1 = m - 1.0L;
  const long double m2 = m - 2.0L;
  const long double m3 = m - 3.0L;
  const long double inner = std::max(0.0L, m1 * e2 + e1 - m * e1 * e1);
  out.mean = static_cast<double>(m * (1.0L - e1));
  out.variance = static_cast<double>(m * inner);
  if (!(inner > 0.0L)) {
    out.skewness = nan;
    out.kurtosis = nan;
    return out;
  }
  // Skewness numerator with the E_r coefficients collected.
  const long double g = e1 + 3.0L * m1 * e2 + m1 * m2 * e3 - 3.0L * m * e1 * e1 + 2.0L * m * m * e1 * e1 * e1 -
                        3.0L * m * m1 * e1 * e2;
  out.skewness = static_cast<double>(-g / (std::sqrt(m) * std::pow(inner, 1.5L)));
  const long double kn = e1 - 4.0L * m * e1 * e1 + 6.0L * m * m * e1 * e1 * e1 - 3.0L * m * m * m * e1 * e1 * e1 * e1 +
                         7.0L * m1 * e2 + 6.0L * m1 * m2 * e3 + m1 * m2 * m3 * e4 - 12.0L * m * m1 * e1 * e2 +
                         6.0L * m * m * m1 * e1 * e1 * e2 - 4.0L * m * m1 * m2 * e1 * e3;
  out.kurtosis = static_cast<double>(kn / (m * inner * inner));
  return out;
}

}  // namespace

MomentSet occ_moments(const OccParams& p) {
  if (p.is_degenerate()) return zero_moments();
  if (p.m().is_infinite()) return binomial_moments(static_cast<double>(p.n()), p.theta());
  const auto m = static_cast<long double>(p.m().value());
  const auto n = static_cast<long double>(p.n());
  const long double theta = p.theta();
  long double e[5];
  for (int r = 1; r <= 4; ++r) e[r] = std::pow(1.0L - theta * r / m, n);
  return moments_from_e(m, e[1], e[2], e[3], e[4]);
}

MomentSet occ_moments_asymptotic(const OccParams& p, MomentRegime regime) {
  if (p.is_degenerate()) return zero_moments();
  const double n = static_cast<double>(p.n());
  const double theta = p.theta();
  if (regime == MomentRegime::large_m) return binomial_moments(n, theta);
  const double m = static_cast<double>(p.m().value());
  const double e = std::exp(-theta * n / m);
  MomentSet out;
  for (int r = 1; r <= 4; ++r) out.e_terms.push_back(std::exp(-theta * r * n / m));
  const double spread = e * (1.0 - e);
  out.mean = m * (1.0 - e);
  out.variance = m * spread;
  if (spread > 0.0) {
    out.skewness = -(1.0 - 2.0 * e) / (std::sqrt(m) * std::sqrt(spread));
    out.kurtosis = 3.0 + (1.0 - 6.0 * spread) / (m * spread);
  } else {
    out.skewness = nan;
    out.kurtosis = nan;
  }
  return out;
}

double occ_normal_approx(const OccParams& p, std::int64_t k) {
  const MomentSet moments = occ_moments(p);
  if (!(moments.variance > 0.0)) throw DomainError("normal approximation needs a positive variance");
  const double sigma = std::sqrt(moments.variance);
  const auto phi = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
  const double kd = static_cast<double>(k);
  return phi((kd + 0.5 - moments.mean) / sigma) - phi((kd - 0.5 - moments.mean) / sigma);
}

}  // namespace occkit
