#include "occkit/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "occkit/errors.hpp"

namespace occkit {

Pmf::Pmf(std::int64_t support_min, std::vector<double> probabilities, PmfMeta meta)
    : support_min_(support_min), probabilities_(std::move(probabilities)), meta_(std::move(meta)) {
  double sum = 0.0;
  for (double p : probabilities_) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw std::logic_error("Pmf: probabilities must be finite and >= 0");
    sum += p;
  }
  if (!probabilities_.empty() && std::fabs(sum + meta_.tail_mass - 1.0) > 1e-9) {
    throw std::logic_error("Pmf: mass " + std::to_string(sum + meta_.tail_mass) + " is not 1");
  }
  auto first = std::find_if(probabilities_.begin(), probabilities_.end(), [](double p) { return p != 0.0; });
  auto last = std::find_if(probabilities_.rbegin(), probabilities_.rend(), [](double p) { return p != 0.0; });
  if (first == probabilities_.end()) return;
  const auto lead = std::distance(probabilities_.begin(), first);
  probabilities_.erase(last.base(), probabilities_.end());
  probabilities_.erase(probabilities_.begin(), probabilities_.begin() + lead);
  support_min_ += lead;
}

Pmf Pmf::point_mass(std::int64_t at, std::string backend) {
  return Pmf(at, {1.0}, PmfMeta{std::move(backend), 0.0, 0.0});
}

double Pmf::operator()(std::int64_t k) const {
  if (k < support_min_ || k > support_max()) return 0.0;
  return probabilities_[static_cast<std::size_t>(k - support_min_)];
}

double Pmf::cdf(std::int64_t k) const {
  if (k < support_min_) return 0.0;
  const auto stop = static_cast<std::size_t>(std::min<std::int64_t>(k - support_min_ + 1, static_cast<std::int64_t>(size())));
  double sum = 0.0;
  for (std::size_t i = 0; i < stop; ++i) sum += probabilities_[i];
  return sum;
}

double Pmf::total() const {
  double sum = 0.0;
  for (double p : probabilities_) sum += p;
  return sum;
}

double Pmf::mean() const {
  double m = 0.0;
  for (std::size_t i = 0; i < size(); ++i) m += static_cast<double>(support_min_ + static_cast<std::int64_t>(i)) * probabilities_[i];
  return m;
}

double Pmf::central_moment(int r) const {
  const double mu = mean();
  double acc = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    const double d = static_cast<double>(support_min_ + static_cast<std::int64_t>(i)) - mu;
    acc += std::pow(d, r) * probabilities_[i];
  }
  return acc;
}

double Pmf::variance() const { return central_moment(2); }

Pmf Pmf::shifted(std::int64_t offset) const {
  Pmf out = *this;
  out.support_min_ += offset;
  return out;
}

namespace {

template <typename F>
void for_union(const Pmf& p, const Pmf& q, F&& f) {
  if (p.empty() && q.empty()) return;
  std::int64_t lo = p.empty() ? q.support_min() : (q.empty() ? p.support_min() : std::min(p.support_min(), q.support_min()));
  std::int64_t hi = p.empty() ? q.support_max() : (q.empty() ? p.support_max() : std::max(p.support_max(), q.support_max()));
  for (std::int64_t k = lo; k <= hi; ++k) f(p(k), q(k));
}

}  // namespace

double total_variation(const Pmf& p, const Pmf& q) {
  double sum = 0.0;
  for_union(p, q, [&](double a, double b) { sum += std::fabs(a - b); });
  return 0.5 * sum;
}

double sup_distance(const Pmf& p, const Pmf& q) {
  double best = 0.0;
  for_union(p, q, [&](double a, double b) { best = std::max(best, std::fabs(a - b)); });
  return best;
}

ExactReal ExactPmf::operator()(std::int64_t k) const {
  if (k < support_min || k >= support_min + static_cast<std::int64_t>(probabilities.size())) return ExactReal(0);
  return probabilities[static_cast<std::size_t>(k - support_min)];
}

ExactReal ExactPmf::total() const {
  ExactReal sum(0);
  for (const auto& p : probabilities) sum += p;
  return sum;
}

Pmf ExactPmf::to_pmf(std::string backend) const {
  std::vector<double> p;
  p.reserve(probabilities.size());
  for (const auto& x : probabilities) p.push_back(x.to_double());
  return Pmf(support_min, std::move(p), PmfMeta{std::move(backend), 0.0, 0.0});
}

}  // namespace occkit
