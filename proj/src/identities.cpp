#include "occkit/identities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "occkit/errors.hpp"
#include "occkit/negative_occupancy.hpp"
#include "occkit/occupancy.hpp"
#include "occkit/reference.hpp"
#include "occkit/spillage.hpp"

namespace occkit {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double mixture_tol = 1e-10;
constexpr double recursion_tol = 1e-10;
constexpr double derivative_tol = 1e-6;
constexpr double dominance_tol = 1e-12;

double as_value(BinCount m) { return m.is_infinite() ? inf : static_cast<double>(m.value()); }
double as_value(std::uint64_t v) { return static_cast<double>(v); }

IdentityReport make_report(std::string name, double tolerance) {
  IdentityReport r;
  r.name = std::move(name);
  r.tolerance = tolerance;
  return r;
}

std::int64_t idx(std::uint64_t k) { return static_cast<std::int64_t>(k); }

// Occ( . | n, m, theta) from the Stirling closed form, or the binomial for infinite m.
Pmf occ_closed_form(std::uint64_t n, BinCount m, double theta) {
  if (m.is_infinite()) return binomial_pmf(n, theta);
  return occ_pmf_stirling(OccParams(n, m, theta));
}

// NegOcc(t | m, k, theta) for t = 0..t_max through the closed form of Occ.
std::vector<double> negocc_closed_form(BinCount m, std::uint64_t k, double theta, std::uint64_t t_max) {
  std::vector<double> out(t_max + 1, 0.0);
  if (m.is_infinite()) {
    const Pmf nb = negbin_pmf(k, 1.0 - theta, t_max);
    for (std::uint64_t t = 0; t <= t_max; ++t) out[t] = nb(idx(t));
    return out;
  }
  const double mm = static_cast<double>(m.value());
  const double advance = theta * (mm - static_cast<double>(k) + 1.0) / mm;
  for (std::uint64_t t = 0; t <= t_max; ++t) {
    out[t] = advance * occ_closed_form(k + t - 1, m, theta)(idx(k - 1));
  }
  return out;
}

std::vector<double> cumulative(const std::vector<double>& p) {
  std::vector<double> out(p.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = acc += p[i];
  return out;
}

std::vector<double> negocc_values(const NegOccParams& p, std::uint64_t t_max) {
  const Pmf pmf = negocc_pmf(p, t_max);
  std::vector<double> out(t_max + 1, 0.0);
  for (std::uint64_t t = 0; t <= t_max; ++t) out[t] = pmf(idx(t));
  return out;
}

// Derivative in theta of f by central difference, or a second-order
// backward difference when theta + h would leave (0, 1].
template <typename F>
double theta_derivative(F&& f, double theta, double h) {
  if (theta + h <= 1.0) return (f(theta + h) - f(theta - h)) / (2.0 * h);
  return (3.0 * f(theta) - 4.0 * f(theta - h) + f(theta - 2.0 * h)) / (2.0 * h);
}

// Records the pair (lower, upper) for a dominance relation where `lower`
// should have the larger CDF everywhere.
void record_dominance(IdentityReport& report, ParamTuple point, const std::vector<double>& f_lower,
                      const std::vector<double>& f_upper, bool strict) {
  double violation = 0.0;
  double gap = 0.0;
  const std::size_t len = std::max(f_lower.size(), f_upper.size());
  for (std::size_t i = 0; i < len; ++i) {
    const double a = i < f_lower.size() ? f_lower[i] : f_lower.back();
    const double b = i < f_upper.size() ? f_upper[i] : f_upper.back();
    violation = std::max(violation, b - a);
    gap = std::max(gap, a - b);
  }
  if (strict && !(gap > dominance_tol)) ++report.strict_failures;
  report.record(std::move(point), violation);
}

std::vector<double> occ_cdf_vector(std::uint64_t n, std::uint64_t m, double theta, std::size_t len) {
  const Pmf pmf = occ_pmf(OccParams(n, m, theta));
  std::vector<double> f(len, 0.0);
  double acc = 0.0;
  for (std::size_t k = 0; k < len; ++k) f[k] = acc += pmf(static_cast<std::int64_t>(k));
  return f;
}

}  // namespace

std::string ParamTuple::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, value] : values) {
    if (!first) os << ',';
    first = false;
    os << key << '=';
    if (std::isinf(value)) {
      os << "inf";
    } else {
      os << value;
    }
  }
  return os.str();
}

void IdentityReport::record(ParamTuple point, double discrepancy) {
  if (std::isnan(discrepancy)) discrepancy = inf;
  if (grid.empty() || discrepancy > max_abs_discrepancy) {
    max_abs_discrepancy = discrepancy;
    worst_case = point;
  }
  grid.push_back(std::move(point));
}

void IdentityReport::merge(const IdentityReport& other) {
  if (!other.grid.empty() && (grid.empty() || other.max_abs_discrepancy > max_abs_discrepancy)) {
    max_abs_discrepancy = other.max_abs_discrepancy;
    worst_case = other.worst_case;
  }
  grid.insert(grid.end(), other.grid.begin(), other.grid.end());
  strict_failures += other.strict_failures;
  tolerance = std::max(tolerance, other.tolerance);
}

// --- mixtures --------------------------------------------------------------

IdentityReport check_random_ball_count(const Pmf& ball_law, const std::function<double(double)>& pgf, std::uint64_t m,
                                       double theta) {
  if (std::fabs(pgf(1.0) - 1.0) > 1e-12) throw DomainError("pgf(1) must equal 1");
  IdentityReport report = make_report("random ball count", mixture_tol + ball_law.meta().tail_mass);
  const double mm = static_cast<double>(m);
  std::vector<double> g(m + 1);
  for (std::uint64_t i = 0; i <= m; ++i) g[i] = pgf(1.0 - theta * static_cast<double>(m - i) / mm);
  std::vector<double> mixed(m + 1, 0.0);
  for (std::int64_t n = ball_law.support_min(); n <= ball_law.support_max(); ++n) {
    const double w = ball_law(n);
    if (w == 0.0) continue;
    const Pmf occ = occ_pmf(OccParams(static_cast<std::uint64_t>(n), m, theta));
    for (std::uint64_t k = 0; k <= m; ++k) mixed[k] += w * occ(idx(k));
  }
  double worst = 0.0;
  for (std::uint64_t k = 0; k <= m; ++k) {
    double alt = 0.0;
    double c = 1.0;  // C(k, i)
    for (std::uint64_t i = 0; i <= k; ++i) {
      alt += ((k - i) % 2 == 0 ? c : -c) * g[i];
      c = c * static_cast<double>(k - i) / static_cast<double>(i + 1);
    }
    alt *= exact_binomial(m, k).to_double();
    worst = std::max(worst, std::fabs(alt - mixed[k]));
  }
  report.record(ParamTuple{{{"m", as_value(m)}, {"theta", theta}, {"mean_n", ball_law.mean()}}}, worst);
  return report;
}

IdentityReport check_random_ball_count_exact(const ExactPmf& ball_law,
                                             const std::function<ExactReal(const ExactReal&)>& pgf, std::uint64_t m,
                                             const ExactReal& theta) {
  if (pgf(ExactReal(1)) != ExactReal(1)) throw DomainError("pgf(1) must equal 1");
  IdentityReport report = make_report("random ball count (exact)", 0.0);
  const ExactReal bins = ExactReal::from_uint(m);
  std::vector<ExactReal> mixed(m + 1, ExactReal(0));
  for (std::size_t i = 0; i < ball_law.probabilities.size(); ++i) {
    const auto n = static_cast<std::uint64_t>(ball_law.support_min + static_cast<std::int64_t>(i));
    const ExactPmf occ = occ_pmf_exact_by_recursion(n, m, theta);
    for (std::uint64_t k = 0; k <= m; ++k) mixed[k] += ball_law.probabilities[i] * occ(idx(k));
  }
  double worst = 0.0;
  for (std::uint64_t k = 0; k <= m; ++k) {
    ExactReal alt(0);
    for (std::uint64_t i = 0; i <= k; ++i) {
      ExactReal term = exact_binomial(k, i) * pgf(ExactReal(1) - theta * ExactReal::from_uint(m - i) / bins);
      alt += (k - i) % 2 == 0 ? term : -term;
    }
    alt *= exact_binomial(m, k);
    const ExactReal diff = alt - mixed[k];
    worst = std::max(worst, std::fabs(diff.to_double()));
  }
  report.record(ParamTuple{{{"m", as_value(m)}, {"theta", theta.to_double()}}}, worst);
  return report;
}

IdentityReport check_occ_binomial_mixture(std::uint64_t n, BinCount m, double theta, double gamma) {
  IdentityReport report = make_report("occupancy binomial mixture", mixture_tol);
  for (const double g : {gamma, 1.0}) {
    const Pmf lhs = occ_pmf(OccParams(n, m, g * theta));
    const Pmf weights = binomial_pmf(n, theta);
    std::vector<double> rhs(n + 1, 0.0);
    for (std::uint64_t r = 0; r <= n; ++r) {
      const Pmf inner = occ_closed_form(r, m, g);
      for (std::uint64_t k = 0; k <= r; ++k) rhs[k] += weights(idx(r)) * inner(idx(k));
    }
    double worst = 0.0;
    for (std::uint64_t k = 0; k <= n; ++k) worst = std::max(worst, std::fabs(lhs(idx(k)) - rhs[k]));
    report.record(ParamTuple{{{"n", as_value(n)}, {"m", as_value(m)}, {"theta", theta}, {"gamma", g}}}, worst);
    if (gamma == 1.0) break;
  }
  return report;
}

IdentityReport check_occ_binomial_mixture_exact(std::uint64_t n, std::uint64_t m, const ExactReal& theta,
                                                const ExactReal& gamma) {
  IdentityReport report = make_report("occupancy binomial mixture (exact)", 0.0);
  const ExactPmf lhs = occ_pmf_exact(n, m, gamma * theta);
  const ExactPmf weights = binomial_pmf_exact(n, theta);
  std::vector<ExactReal> rhs(n + 1, ExactReal(0));
  for (std::uint64_t r = 0; r <= n; ++r) {
    const ExactPmf inner = occ_pmf_exact_by_recursion(r, m, gamma);
    for (std::uint64_t k = 0; k <= r; ++k) rhs[k] += weights(idx(r)) * inner(idx(k));
  }
  double worst = 0.0;
  for (std::uint64_t k = 0; k <= n; ++k) worst = std::max(worst, std::fabs((lhs(idx(k)) - rhs[k]).to_double()));
  report.record(ParamTuple{{{"n", as_value(n)}, {"m", as_value(m)}, {"theta", theta.to_double()}, {"gamma", gamma.to_double()}}},
                worst);
  return report;
}

namespace {

IdentityReport poisson_mixture(std::string name, const Pmf& target, double lambda, std::uint64_t m, double theta,
                               double tail, ParamTuple point) {
  const Pmf weights = poisson_pmf(lambda, tail);
  IdentityReport report = make_report(std::move(name), weights.meta().tail_mass + 1e-12);
  std::vector<double> rhs(m + 1, 0.0);
  for (std::int64_t r = 0; r <= weights.support_max(); ++r) {
    const Pmf occ = occ_pmf(OccParams(static_cast<std::uint64_t>(r), m, theta));
    for (std::uint64_t k = 0; k <= m; ++k) rhs[k] += weights(r) * occ(idx(k));
  }
  double worst = 0.0;
  for (std::uint64_t k = 0; k <= m; ++k) worst = std::max(worst, std::fabs(target(idx(k)) - rhs[k]));
  report.record(std::move(point), worst);
  return report;
}

}  // namespace

IdentityReport check_binomial_poisson_mixture(double lambda, std::uint64_t m, double theta, double truncation_tail) {
  OccParams(0, m, theta);
  const double p = -std::expm1(-lambda * theta / static_cast<double>(m));
  return poisson_mixture("binomial poisson mixture", binomial_pmf(m, p), lambda, m, theta, truncation_tail,
                         ParamTuple{{{"lambda", lambda}, {"m", as_value(m)}, {"theta", theta}}});
}

IdentityReport check_binomial_poisson_mixture_gamma(double gamma, std::uint64_t m, double theta,
                                                    double truncation_tail) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("gamma must lie in (0, 1)");
  OccParams(0, m, theta);
  const double lambda = -static_cast<double>(m) * std::log1p(-gamma) / theta;
  return poisson_mixture("binomial poisson mixture (gamma form)", binomial_pmf(m, gamma), lambda, m, theta,
                         truncation_tail, ParamTuple{{{"gamma", gamma}, {"m", as_value(m)}, {"theta", theta}}});
}

IdentityReport check_negocc_mixture(BinCount m, std::uint64_t k, double theta, double gamma, std::uint64_t t_max) {
  IdentityReport report = make_report("negative occupancy mixture", mixture_tol);
  for (const double g : {gamma, 1.0}) {
    const auto lhs = negocc_values(NegOccParams(m, k, g * theta), t_max);
    const auto inner = negocc_closed_form(m, k, g, t_max);
    std::vector<double> rhs(t_max + 1, 0.0);
    for (std::uint64_t r = 0; r <= t_max; ++r) {
      const Pmf nb = negbin_pmf(k + r, 1.0 - theta, t_max - r);
      for (std::uint64_t t = r; t <= t_max; ++t) rhs[t] += nb(idx(t - r)) * inner[r];
    }
    double worst = 0.0;
    for (std::uint64_t t = 0; t <= t_max; ++t) worst = std::max(worst, std::fabs(lhs[t] - rhs[t]));
    report.record(ParamTuple{{{"m", as_value(m)}, {"k", as_value(k)}, {"theta", theta}, {"gamma", g}}}, worst);
    if (gamma == 1.0) break;
  }
  return report;
}

IdentityReport check_negocc_mixture_exact(std::uint64_t m, std::uint64_t k, const ExactReal& theta,
                                          const ExactReal& gamma, std::uint64_t t_max) {
  IdentityReport report = make_report("negative occupancy mixture (exact)", 0.0);
  const ExactPmf lhs = negocc_pmf_exact(m, k, gamma * theta, t_max);
  const ExactPmf inner = negocc_pmf_exact(m, k, gamma, t_max);
  std::vector<ExactReal> rhs(t_max + 1, ExactReal(0));
  const ExactReal fail = ExactReal(1) - theta;
  for (std::uint64_t r = 0; r <= t_max; ++r) {
    const ExactPmf nb = negbin_pmf_exact(k + r, fail, t_max - r);
    for (std::uint64_t t = r; t <= t_max; ++t) rhs[t] += nb(idx(t - r)) * inner(idx(r));
  }
  double worst = 0.0;
  for (std::uint64_t t = 0; t <= t_max; ++t) worst = std::max(worst, std::fabs((lhs(idx(t)) - rhs[t]).to_double()));
  report.record(ParamTuple{{{"m", as_value(m)}, {"k", as_value(k)}, {"theta", theta.to_double()}, {"gamma", gamma.to_double()}}},
                worst);
  return report;
}

IdentityReport check_spillage_mixture(std::uint64_t n, BinCount m, double theta) {
  IdentityReport report = make_report("spillage mixture", mixture_tol);
  const Pmf lhs = binomial_pmf(n, theta);
  const OccParams params(n, m, theta);
  const Pmf occ = occ_pmf(params);
  const double phi = spillage_scale(m, theta);
  std::vector<double> rhs(n + 1, 0.0);
  for (std::uint64_t k = 0; k <= params.k_max(); ++k) {
    const Pmf spill = spillage_pmf(SpillageParams(n, k, phi));
    for (std::uint64_t s = k; s <= n; ++s) rhs[s] += spill(idx(s - k)) * occ(idx(k));
  }
  double worst = 0.0;
  for (std::uint64_t s = 0; s <= n; ++s) worst = std::max(worst, std::fabs(lhs(idx(s)) - rhs[s]));
  report.record(ParamTuple{{{"n", as_value(n)}, {"m", as_value(m)}, {"theta", theta}}}, worst);
  return report;
}

IdentityReport check_spillage_mixture_exact(std::uint64_t n, std::uint64_t m, const ExactReal& theta) {
  IdentityReport report = make_report("spillage mixture (exact)", 0.0);
  const ExactPmf lhs = binomial_pmf_exact(n, theta);
  const ExactPmf occ = occ_pmf_exact(n, m, theta);
  const ExactReal phi = ExactReal::from_uint(m) * (ExactReal(1) - theta) / theta;
  std::vector<ExactReal> rhs(n + 1, ExactReal(0));
  for (std::uint64_t k = 0; k <= std::min(n, m); ++k) {
    const ExactPmf spill = spillage_pmf_exact(n, k, phi);
    for (std::uint64_t s = k; s <= n; ++s) rhs[s] += spill(idx(s - k)) * occ(idx(k));
  }
  double worst = 0.0;
  for (std::uint64_t s = 0; s <= n; ++s) worst = std::max(worst, std::fabs((lhs(idx(s)) - rhs[s]).to_double()));
  report.record(ParamTuple{{{"n", as_value(n)}, {"m", as_value(m)}, {"theta", theta.to_double()}}}, worst);
  return report;
}

// --- recursions ------------------------------------------------------------

IdentityReport check_occ_n_recursion(std::uint64_t n, std::uint64_t m, double theta) {
  IdentityReport report = make_report("occupancy n-recursion", recursion_tol);
  const Pmf now = occ_closed_form(n, m, theta);
  const Pmf next = occ_closed_form(n + 1, m, theta);
  const double mm = static_cast<double>(m);
  double worst = 0.0;
  for (std::uint64_t k = 0; k <= std::min(n + 1, m); ++k) {
    const double kk = static_cast<double>(k);
    double rhs = (1.0 - theta * (mm - kk) / mm) * now(idx(k));
    if (k > 0) rhs += theta * (mm - kk + 1.0) / mm * now(idx(k) - 1);
    worst = std::max(worst, std::fabs(next(idx(k)) - rhs));
  }
  report.record(ParamTuple{{{"n", as_value(n)}, {"m", as_value(m)}, {"theta", theta}}}, worst);
  return report;
}

IdentityReport check_occ_m_recursion(std::uint64_t n, std::uint64_t m, double theta) {
  IdentityReport report = make_report("occupancy m-recursion", recursion_tol);
  const double mm = static_cast<double>(m);
  const double shifted = mm * theta / (1.0 - theta + mm);
  const Pmf bigger = occ_pmf(OccParams(n, m + 1, theta));
  const Pmf smaller = occ_pmf(OccParams(n, m, shifted));
  const double factor = std::pow(1.0 - theta / (mm + 1.0), static_cast<double>(n));
  double worst = 0.0;
  for (std::uint64_t k = 0; k <= std::min(n, m); ++k) {
    const double rhs = (mm + 1.0) / (mm - static_cast<double>(k) + 1.0) * factor * smaller(idx(k));
    worst = std::max(worst, std::fabs(bigger(idx(k)) - rhs));
  }
  report.record(ParamTuple{{{"n", as_value(n)}, {"m", as_value(m)}, {"theta", theta}}}, worst);
  return report;
}

IdentityReport check_occ_derivative(std::uint64_t n, std::uint64_t m, double theta, double h) {
  IdentityReport report = make_report("occupancy theta-derivative", derivative_tol);
  const double mm = static_cast<double>(m);
  const Pmf before = n > 0 ? occ_pmf(OccParams(n - 1, m, theta)) : Pmf::point_mass(0, "none");
  double worst = 0.0;
  for (std::uint64_t k = 0; k <= std::min(n, m); ++k) {
    const auto f = [&](double th) { return occ_pmf(OccParams(n, m, th))(idx(k)); };
    const double numeric = theta_derivative(f, theta, h);
    double analytic = 0.0;
    if (n > 0) {
      const double kk = static_cast<double>(k);
      analytic = -(mm - kk) / mm * before(idx(k));
      if (k > 0) analytic += (mm - kk + 1.0) / mm * before(idx(k) - 1);
      analytic *= static_cast<double>(n);
    }
    worst = std::max(worst, std::fabs(numeric - analytic));
  }
  report.record(ParamTuple{{{"n", as_value(n)}, {"m", as_value(m)}, {"theta", theta}}}, worst);
  return report;
}

IdentityReport check_negocc_m_recursion(std::uint64_t m, std::uint64_t k, double theta, std::uint64_t t_max) {
  IdentityReport report = make_report("negative occupancy m-recursion", recursion_tol);
  const double mm = static_cast<double>(m);
  const double shifted = mm * theta / (1.0 - theta + mm);
  const auto bigger = negocc_values(NegOccParams(m + 1, k, theta), t_max);
  const auto smaller = negocc_closed_form(m, k, shifted, t_max);
  double worst = 0.0;
  for (std::uint64_t t = 0; t <= t_max; ++t) {
    const double factor = std::pow(1.0 - theta / (mm + 1.0), static_cast<double>(k + t));
    const double rhs = (mm + 1.0) / (mm - static_cast<double>(k) + 1.0) * factor * smaller[t];
    worst = std::max(worst, std::fabs(bigger[t] - rhs));
  }
  report.record(ParamTuple{{{"m", as_value(m)}, {"k", as_value(k)}, {"theta", theta}}}, worst);
  return report;
}

IdentityReport check_negocc_k_recursion(std::uint64_t m, std::uint64_t k, double theta, std::uint64_t t_max) {
  IdentityReport report = make_report("negative occupancy k-recursion", recursion_tol);
  if (k + 1 > m) throw DomainError("k-recursion needs k + 1 <= m");
  const double ratio = theta * static_cast<double>(m - k) / static_cast<double>(m);
  const auto next = negocc_values(NegOccParams(m, k + 1, theta), t_max);
  const auto now = negocc_closed_form(m, k, theta, t_max);
  double worst = 0.0;
  for (std::uint64_t t = 0; t <= t_max; ++t) {
    double sum = 0.0;
    double power = 1.0;
    for (std::uint64_t i = 0; i <= t; ++i) {
      sum += power * now[t - i];
      power *= 1.0 - ratio;
    }
    worst = std::max(worst, std::fabs(next[t] - ratio * sum));
  }
  report.record(ParamTuple{{{"m", as_value(m)}, {"k", as_value(k)}, {"theta", theta}}}, worst);
  return report;
}

IdentityReport check_negocc_derivative(std::uint64_t m, std::uint64_t k, double theta, std::uint64_t t_max,
                                       double h) {
  IdentityReport report = make_report("negative occupancy theta-derivative", derivative_tol);
  const double coef = static_cast<double>(m - k + 1) / static_cast<double>(m);
  const auto here = negocc_values(NegOccParams(m, k, theta), t_max);
  const std::vector<double> lower =
      k > 1 ? negocc_values(NegOccParams(m, k - 1, theta), t_max) : std::vector<double>(t_max + 1, 0.0);
  const auto at = [&](double th) { return negocc_values(NegOccParams(m, k, th), t_max); };
  const bool central = theta + h <= 1.0;
  const auto a = at(central ? theta + h : theta);
  const auto b = at(theta - h);
  const auto c = central ? std::vector<double>{} : at(theta - 2.0 * h);
  double worst = 0.0;
  for (std::uint64_t t = 0; t <= t_max; ++t) {
    const double numeric = central ? (a[t] - b[t]) / (2.0 * h) : (3.0 * a[t] - 4.0 * b[t] + c[t]) / (2.0 * h);
    const double previous = t > 0 ? here[t - 1] : 0.0;
    const double analytic = here[t] / theta + static_cast<double>(k + t - 1) * coef * (lower[t] - previous);
    worst = std::max(worst, std::fabs(numeric - analytic));
  }
  report.record(ParamTuple{{{"m", as_value(m)}, {"k", as_value(k)}, {"theta", theta}}}, worst);
  return report;
}

// --- dominance -------------------------------------------------------------

IdentityReport check_occ_dominance_n(const std::vector<std::uint64_t>& ns, std::uint64_t m, double theta) {
  IdentityReport report = make_report("occupancy dominance in n", dominance_tol);
  auto sorted = ns;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t len = static_cast<std::size_t>(std::min(sorted.empty() ? 0 : sorted.back(), m)) + 1;
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    const std::uint64_t n = sorted[i];
    const std::uint64_t n2 = sorted[i + 1];
    record_dominance(report,
                     ParamTuple{{{"n", as_value(n)}, {"n'", as_value(n2)}, {"m", as_value(m)}, {"theta", theta}}},
                     occ_cdf_vector(n, m, theta, len), occ_cdf_vector(n2, m, theta, len), n < n2 && m > 1);
  }
  return report;
}

IdentityReport check_occ_dominance_m(std::uint64_t n, const std::vector<std::uint64_t>& ms, double theta) {
  IdentityReport report = make_report("occupancy dominance in m", dominance_tol);
  auto sorted = ms;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t len = static_cast<std::size_t>(n) + 1;
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    const std::uint64_t m = sorted[i];
    const std::uint64_t m2 = sorted[i + 1];
    record_dominance(report,
                     ParamTuple{{{"n", as_value(n)}, {"m", as_value(m)}, {"m'", as_value(m2)}, {"theta", theta}}},
                     occ_cdf_vector(n, m, theta, len), occ_cdf_vector(n, m2, theta, len), m < m2 && n > 1);
  }
  return report;
}

IdentityReport check_occ_dominance_theta(std::uint64_t n, std::uint64_t m, const std::vector<double>& thetas) {
  IdentityReport report = make_report("occupancy dominance in theta", dominance_tol);
  auto sorted = thetas;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t len = static_cast<std::size_t>(std::min(n, m)) + 1;
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    const double th = sorted[i];
    const double th2 = sorted[i + 1];
    // With no balls both laws sit at 0, so strictness needs n >= 1.
    record_dominance(report,
                     ParamTuple{{{"n", as_value(n)}, {"m", as_value(m)}, {"theta", th}, {"theta'", th2}}},
                     occ_cdf_vector(n, m, th, len), occ_cdf_vector(n, m, th2, len), th < th2 && n >= 1);
  }
  return report;
}

IdentityReport check_negocc_dominance_m(const std::vector<std::uint64_t>& ms, std::uint64_t k, double theta,
                                        std::uint64_t t_max) {
  IdentityReport report = make_report("negative occupancy dominance in m", dominance_tol);
  auto sorted = ms;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    const std::uint64_t m = sorted[i];
    const std::uint64_t m2 = sorted[i + 1];
    // T_1 does not depend on m, so strictness needs k > 1.
    record_dominance(report,
                     ParamTuple{{{"m", as_value(m)}, {"m'", as_value(m2)}, {"k", as_value(k)}, {"theta", theta}}},
                     cumulative(negocc_values(NegOccParams(m2, k, theta), t_max)),
                     cumulative(negocc_values(NegOccParams(m, k, theta), t_max)), m < m2 && k > 1);
  }
  return report;
}

IdentityReport check_negocc_dominance_k(std::uint64_t m, const std::vector<std::uint64_t>& ks, double theta,
                                        std::uint64_t t_max) {
  IdentityReport report = make_report("negative occupancy dominance in k", dominance_tol);
  auto sorted = ks;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    const std::uint64_t k = sorted[i];
    const std::uint64_t k2 = sorted[i + 1];
    record_dominance(report,
                     ParamTuple{{{"m", as_value(m)}, {"k", as_value(k)}, {"k'", as_value(k2)}, {"theta", theta}}},
                     cumulative(negocc_values(NegOccParams(m, k, theta), t_max)),
                     cumulative(negocc_values(NegOccParams(m, k2, theta), t_max)), k < k2);
  }
  return report;
}

IdentityReport check_negocc_dominance_theta(std::uint64_t m, std::uint64_t k, const std::vector<double>& thetas,
                                            std::uint64_t t_max) {
  IdentityReport report = make_report("negative occupancy dominance in theta", dominance_tol);
  auto sorted = thetas;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    const double th = sorted[i];
    const double th2 = sorted[i + 1];
    record_dominance(report,
                     ParamTuple{{{"m", as_value(m)}, {"k", as_value(k)}, {"theta", th}, {"theta'", th2}}},
                     cumulative(negocc_values(NegOccParams(m, k, th2), t_max)),
                     cumulative(negocc_values(NegOccParams(m, k, th), t_max)), th < th2);
  }
  return report;
}

// --- drivers ---------------------------------------------------------------

GridSpec GridSpec::make(CheckGrid grid) {
  GridSpec spec;
  if (grid == CheckGrid::full) {
    spec.max_n = 14;
    spec.max_m = 12;
    spec.thetas = {0.1, 0.3, 0.5, 0.7, 0.9, 1.0};
    spec.gammas = {0.1, 0.3, 0.5, 0.7, 0.9, 1.0};
    spec.lambdas = {0.5, 1.0, 3.0, 8.0};
    spec.t_max = 50;
  }
  return spec;
}

std::vector<IdentityReport> run_all_checks(CheckGrid grid) { return run_all_checks(GridSpec::make(grid)); }

std::vector<IdentityReport> run_all_checks(const GridSpec& spec) {
  std::vector<IdentityReport> out;
  const auto accumulate = [&out](IdentityReport r) {
    for (auto& existing : out) {
      if (existing.name == r.name) {
        existing.merge(r);
        return;
      }
    }
    out.push_back(std::move(r));
  };
  std::vector<std::uint64_t> ns;
  for (std::uint64_t n = 0; n <= spec.max_n; ++n) ns.push_back(n);
  std::vector<std::uint64_t> ms;
  for (std::uint64_t m = 1; m <= spec.max_m; ++m) ms.push_back(m);
  const std::uint64_t dominance_t_max = std::max<std::uint64_t>(spec.t_max, 50);

  for (const double theta : spec.thetas) {
    for (const std::uint64_t m : ms) {
      // Random ball count with fixed, binomial and Poisson N.
      for (const std::uint64_t n : ns) {
        const double fixed = static_cast<double>(n);
        accumulate(check_random_ball_count(Pmf::point_mass(static_cast<std::int64_t>(n), "fixed"),
                                           [fixed](double z) { return std::pow(z, fixed); }, m, theta));
        const double half = 0.5;
        accumulate(check_random_ball_count(binomial_pmf(n, half),
                                           [fixed, half](double z) { return std::pow(1.0 - half + half * z, fixed); },
                                           m, theta));
      }
      for (const double lambda : spec.lambdas) {
        accumulate(check_random_ball_count(poisson_pmf(lambda, 1e-14),
                                           [lambda](double z) { return std::exp(lambda * (z - 1.0)); }, m, theta));
        accumulate(check_binomial_poisson_mixture(lambda, m, theta, 1e-14));
      }
      for (const double gamma : spec.gammas) {
        if (gamma < 1.0) accumulate(check_binomial_poisson_mixture_gamma(gamma, m, theta, 1e-14));
      }
      for (const std::uint64_t n : ns) {
        for (const double gamma : spec.gammas) accumulate(check_occ_binomial_mixture(n, m, theta, gamma));
        accumulate(check_spillage_mixture(n, m, theta));
        accumulate(check_occ_n_recursion(n, m, theta));
        accumulate(check_occ_m_recursion(n, m, theta));
        accumulate(check_occ_derivative(n, m, theta));
      }
      for (std::uint64_t k = 1; k <= m; ++k) {
        for (const double gamma : spec.gammas) accumulate(check_negocc_mixture(m, k, theta, gamma, spec.t_max));
        accumulate(check_negocc_m_recursion(m, k, theta, spec.t_max));
        if (k < m) accumulate(check_negocc_k_recursion(m, k, theta, spec.t_max));
        accumulate(check_negocc_derivative(m, k, theta, spec.t_max));
      }
      accumulate(check_occ_dominance_n(ns, m, theta));
      std::vector<std::uint64_t> ks;
      for (std::uint64_t k = 1; k <= m; ++k) ks.push_back(k);
      accumulate(check_negocc_dominance_k(m, ks, theta, dominance_t_max));
    }
    for (const std::uint64_t n : ns) {
      accumulate(check_occ_binomial_mixture(n, BinCount::infinite(), theta, spec.gammas.front()));
      accumulate(check_spillage_mixture(n, BinCount::infinite(), theta));
      accumulate(check_occ_dominance_m(n, ms, theta));
    }
    for (std::uint64_t k = 1; k <= spec.max_m; ++k) {
      accumulate(check_negocc_mixture(BinCount::infinite(), k, theta, spec.gammas.front(), spec.t_max));
      std::vector<std::uint64_t> valid;
      for (const std::uint64_t m : ms) {
        if (m >= k) valid.push_back(m);
      }
      accumulate(check_negocc_dominance_m(valid, k, theta, dominance_t_max));
    }
  }
  for (const std::uint64_t m : ms) {
    for (const std::uint64_t n : ns) accumulate(check_occ_dominance_theta(n, m, spec.thetas));
    for (std::uint64_t k = 1; k <= m; ++k) accumulate(check_negocc_dominance_theta(m, k, spec.thetas, dominance_t_max));
  }
  return out;
}

std::vector<IdentityReport> run_exact_checks(std::uint64_t max_n, std::uint64_t max_m, std::uint64_t t_max) {
  std::vector<IdentityReport> out;
  const auto accumulate = [&out](IdentityReport r) {
    for (auto& existing : out) {
      if (existing.name == r.name) {
        existing.merge(r);
        return;
      }
    }
    out.push_back(std::move(r));
  };
  const std::vector<ExactReal> values{ExactReal(3, 10), ExactReal(7, 10), ExactReal(1)};
  const ExactReal half(1, 2);
  for (const auto& theta : values) {
    for (std::uint64_t m = 1; m <= max_m; ++m) {
      for (std::uint64_t n = 0; n <= max_n; ++n) {
        const auto pgf = [n, half](const ExactReal& z) { return (ExactReal(1) - half + half * z).pow(n); };
        accumulate(check_random_ball_count_exact(binomial_pmf_exact(n, half), pgf, m, theta));
        for (const auto& gamma : values) accumulate(check_occ_binomial_mixture_exact(n, m, theta, gamma));
        accumulate(check_spillage_mixture_exact(n, m, theta));
      }
      for (std::uint64_t k = 1; k <= m; ++k) {
        for (const auto& gamma : values) accumulate(check_negocc_mixture_exact(m, k, theta, gamma, t_max));
      }
    }
  }
  return out;
}

}  // namespace occkit
