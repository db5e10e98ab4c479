#include "occkit/spillage.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "occkit/errors.hpp"
#include "occkit/stirling.hpp"

namespace occkit {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

// Point masses shared by every backend; nullopt means the general formula applies.
std::optional<std::int64_t> degenerate_spillage(std::uint64_t n, std::uint64_t k, bool phi_zero, bool phi_infinite) {
  if (phi_zero) return static_cast<std::int64_t>(n - k);
  if (phi_infinite || k == 0) return 0;
  return std::nullopt;
}

}  // namespace

Pmf spillage_pmf(const SpillageParams& p) {
  const std::uint64_t n = p.n();
  const std::uint64_t k = p.k();
  const double phi = p.phi();
  if (auto at = degenerate_spillage(n, k, phi == 0.0, std::isinf(phi))) return Pmf::point_mass(*at, "closed-form");
  const auto central = stirling_column_scaled(k, n, 0.0);  // S(k+r, k)
  const ScaledFloat denominator = stirling_noncentral_scaled(n, k, phi);
  const ScaledFloat scale(phi);
  std::vector<double> probs(n - k + 1, 0.0);
  // Walk r downward so C(n, k+r) and phi^(n-k-r) grow by one factor per step.
  ScaledFloat binom(1.0);
  ScaledFloat power(1.0);
  for (std::uint64_t r = n - k + 1; r-- > 0;) {
    const std::uint64_t s = k + r;
    probs[r] = (binom * power * central[r] / denominator).to_double();
    binom *= ScaledFloat(static_cast<double>(s) / static_cast<double>(n - s + 1));
    power *= scale;
  }
  const double bound = 8.0 * static_cast<double>(n + 2) * static_cast<double>(n - k + 1) * eps;
  return Pmf(0, std::move(probs), PmfMeta{"stirling-scaled", bound, 0.0});
}

Pmf spillage_pmf_via_pi(const SpillageParams& p) {
  const std::uint64_t n = p.n();
  const std::uint64_t k = p.k();
  const double phi = p.phi();
  if (auto at = degenerate_spillage(n, k, phi == 0.0, std::isinf(phi))) return Pmf::point_mass(*at, "closed-form");
  const auto central = stirling_column_scaled(k, n, 0.0);
  const ScaledFloat pi_n = scaled_stirling_pi(n, k, phi);
  const ScaledFloat inv_phi = ScaledFloat(1.0) / ScaledFloat(phi);
  std::vector<double> probs(n - k + 1, 0.0);
  ScaledFloat outer(1.0);  // C(n-k, r)
  ScaledFloat inner(1.0);  // C(k+r, k)
  ScaledFloat power(1.0);  // phi^-r
  for (std::uint64_t r = 0; r <= n - k; ++r) {
    probs[r] = (outer * central[r] * power / (inner * pi_n)).to_double();
    outer *= ScaledFloat(static_cast<double>(n - k - r) / static_cast<double>(r + 1));
    inner *= ScaledFloat(static_cast<double>(k + r + 1) / static_cast<double>(r + 1));
    power *= inv_phi;
  }
  const double bound = 8.0 * static_cast<double>(n + 2) * static_cast<double>(n - k + 1) * eps;
  return Pmf(0, std::move(probs), PmfMeta{"scaled-pi", bound, 0.0});
}

ExactPmf spillage_pmf_exact(std::uint64_t n, std::uint64_t k, const ExactReal& phi) {
  if (k > n) throw DomainError("occupancy parameter k must not exceed n");
  if (phi.sign() < 0) throw DomainError("scale parameter phi must be >= 0");
  ExactPmf out;
  out.probabilities.assign(n - k + 1, ExactReal(0));
  if (auto at = degenerate_spillage(n, k, phi.is_zero(), false)) {
    out.probabilities[static_cast<std::size_t>(*at)] = ExactReal(1);
    return out;
  }
  const auto central = stirling_column_exact(k, n, ExactReal(0));
  const ExactReal denominator = stirling_noncentral_exact(n, k, phi);
  for (std::uint64_t r = 0; r <= n - k; ++r) {
    out.probabilities[r] = exact_binomial(n, k + r) * phi.pow(n - k - r) * central[r] / denominator;
  }
  return out;
}

Pmf effective_balls_given_occupancy(std::uint64_t n, BinCount m, double theta, std::uint64_t k) {
  if (!m.is_infinite() && k > m.value()) throw DomainError("occupancy k must not exceed m");
  const double phi = spillage_scale(m, theta);
  return spillage_pmf(SpillageParams(n, k, phi)).shifted(static_cast<std::int64_t>(k));
}

}  // namespace occkit
