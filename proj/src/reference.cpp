#include "occkit/reference.hpp"

#include <cmath>
#include <limits>

#include "occkit/errors.hpp"

namespace occkit {

namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("probability must lie in [0, 1]");
}

double sum_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace

Pmf binomial_pmf(std::uint64_t n, double p) {
  check_probability(p);
  if (p == 0.0) return Pmf::point_mass(0, "binomial");
  if (p == 1.0) return Pmf::point_mass(static_cast<std::int64_t>(n), "binomial");
  // Ratio recurrence outward from the mode, then normalise.
  std::vector<double> w(n + 1, 0.0);
  const auto mode = static_cast<std::uint64_t>(std::floor(static_cast<double>(n + 1) * p));
  const std::uint64_t centre = std::min(mode, n);
  const double odds = p / (1.0 - p);
  w[centre] = 1.0;
  for (std::uint64_t k = centre; k < n; ++k) {
    w[k + 1] = w[k] * odds * static_cast<double>(n - k) / static_cast<double>(k + 1);
    if (w[k + 1] < 1e-300) break;
  }
  for (std::uint64_t k = centre; k > 0; --k) {
    w[k - 1] = w[k] / odds * static_cast<double>(k) / static_cast<double>(n - k + 1);
    if (w[k - 1] < 1e-300) break;
  }
  const double total = sum_of(w);
  for (double& x : w) x /= total;
  const double bound = 4.0 * static_cast<double>(n + 1) * std::numeric_limits<double>::epsilon();
  return Pmf(0, std::move(w), PmfMeta{"binomial", bound, 0.0});
}

ExactPmf binomial_pmf_exact(std::uint64_t n, const ExactReal& p) {
  if (p.sign() < 0 || p > ExactReal(1)) throw DomainError("probability must lie in [0, 1]");
  ExactPmf out;
  out.probabilities.reserve(n + 1);
  const ExactReal q = ExactReal(1) - p;
  for (std::uint64_t k = 0; k <= n; ++k) {
    out.probabilities.push_back(exact_binomial(n, k) * p.pow(k) * q.pow(n - k));
  }
  return out;
}

Pmf negbin_pmf(std::uint64_t k, double p, std::uint64_t t_max) {
  check_probability(p);
  if (k == 0 || p == 0.0) return Pmf::point_mass(0, "negative-binomial");
  if (p == 1.0) throw DomainError("negative binomial with failure probability 1 never terminates");
  std::vector<double> w(t_max + 1, 0.0);
  const double kd = static_cast<double>(k);
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  double cumulative = 0.0;
  double current = std::pow(1.0 - p, kd);
  for (std::uint64_t t = 0; t <= t_max; ++t) {
    const double td = static_cast<double>(t);
    if (current > 1e-290) {
      w[t] = current;
    } else {
      w[t] = std::exp(std::lgamma(kd + td) - std::lgamma(td + 1.0) - std::lgamma(kd) + td * log_p + kd * log_q);
    }
    cumulative += w[t];
    current = w[t] * p * (kd + td) / (td + 1.0);
  }
  const double tail = std::max(0.0, 1.0 - cumulative);
  return Pmf(0, std::move(w), PmfMeta{"negative-binomial", 1e-14 * static_cast<double>(t_max + 1), tail});
}

ExactPmf negbin_pmf_exact(std::uint64_t k, const ExactReal& p, std::uint64_t t_max) {
  if (p.sign() < 0 || p >= ExactReal(1)) throw DomainError("probability must lie in [0, 1)");
  ExactPmf out;
  const ExactReal q_k = (ExactReal(1) - p).pow(k);
  for (std::uint64_t t = 0; t <= t_max; ++t) {
    const ExactReal coef = k == 0 ? ExactReal(t == 0 ? 1 : 0) : exact_binomial(k + t - 1, t);
    out.probabilities.push_back(coef * p.pow(t) * q_k);
  }
  return out;
}

Pmf poisson_pmf(double lambda, double tail) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("Poisson rate must be finite and >= 0");
  if (!(tail > 0.0 && tail < 1.0)) throw DomainError("tail tolerance must lie in (0, 1)");
  if (lambda == 0.0) return Pmf::point_mass(0, "poisson");
  const auto mode = static_cast<std::uint64_t>(std::floor(lambda));
  const double log_mode = -lambda + static_cast<double>(mode) * std::log(lambda) - std::lgamma(static_cast<double>(mode) + 1.0);
  std::vector<double> w(mode + 1, 0.0);
  w[mode] = std::exp(log_mode);
  for (std::uint64_t r = mode; r > 0; --r) w[r - 1] = w[r] * static_cast<double>(r) / lambda;
  // Upper tail past r is at most p(r+1) / (1 - lambda/(r+2)) once r + 2 > lambda.
  for (std::uint64_t r = mode;; ++r) {
    const double next = w[r] * lambda / static_cast<double>(r + 1);
    const double ratio = lambda / static_cast<double>(r + 2);
    if (ratio < 1.0 && next / (1.0 - ratio) < tail) break;
    w.push_back(next);
  }
  const double mass = sum_of(w);
  const double remainder = std::max(0.0, 1.0 - mass);
  return Pmf(0, std::move(w), PmfMeta{"poisson", 1e-14 * std::sqrt(lambda + 1.0), remainder});
}

}  // namespace occkit
