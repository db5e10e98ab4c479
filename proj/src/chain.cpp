#include "occkit/chain.hpp"

#include <cmath>
#include <limits>

#include "occkit/detail/occupancy_recursion.hpp"
#include "occkit/errors.hpp"

namespace occkit {

namespace {

void validate_chain(std::uint64_t m, double theta) {
  if (m == 0) throw DomainError("number of bins m must be >= 1");
  if (!(theta > 0.0 && theta <= 1.0)) throw DomainError("theta must lie in (0, 1]");
}

}  // namespace

TransitionMatrix::TransitionMatrix(std::uint64_t m, double theta) : m_(m), theta_(theta) {
  validate_chain(m, theta);
}

double TransitionMatrix::advance(std::uint64_t t) const {
  if (t > m_) throw DomainError("state outside 0..m");
  return theta_ * static_cast<double>(m_ - t) / static_cast<double>(m_);
}

double TransitionMatrix::stay(std::uint64_t t) const { return 1.0 - advance(t); }

double TransitionMatrix::operator()(std::uint64_t row, std::uint64_t col) const {
  if (row > m_ || col > m_) throw DomainError("index outside 0..m");
  if (col == row) return stay(row);
  if (col == row + 1) return advance(row);
  return 0.0;
}

Matrix TransitionMatrix::dense() const {
  Matrix out(m_ + 1, std::vector<double>(m_ + 1, 0.0));
  for (std::uint64_t t = 0; t <= m_; ++t) {
    out[t][t] = stay(t);
    if (t < m_) out[t][t + 1] = advance(t);
  }
  return out;
}

TransitionMatrix build_transition(std::uint64_t m, double theta) { return {m, theta}; }

Pmf occupancy_by_power(std::uint64_t n, std::uint64_t m, double theta, std::uint64_t start_t) {
  validate_chain(m, theta);
  if (start_t > m) throw DomainError("start state must lie in 0..m");
  const std::uint64_t reach = std::min<std::uint64_t>(n, m - start_t);
  detail::OccupancyRecursion<double> chain(m, theta, start_t, reach + 1);
  chain.advance(n);
  const double bound = 3.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon();
  return Pmf(static_cast<std::int64_t>(start_t), chain.probabilities(), PmfMeta{"matrix-power", bound, 0.0});
}

SpectralDecomposition::SpectralDecomposition(std::uint64_t m, double theta, std::uint64_t max_m)
    : m_(m), theta_(theta) {
  validate_chain(m, theta);
  if (m > max_m) throw DomainError("spectral path is limited to m <= " + std::to_string(max_m));
  eigenvalues_.resize(m + 1);
  v_.assign(m + 1, std::vector<double>(m + 1, 0.0));
  w_.assign(m + 1, std::vector<double>(m + 1, 0.0));
  for (std::uint64_t i = 0; i <= m; ++i) {
    eigenvalues_[i] = 1.0 - theta * static_cast<double>(m - i) / static_cast<double>(m);
    double binom = 1.0;  // C(m - i, j - i)
    for (std::uint64_t j = i; j <= m; ++j) {
      v_[i][j] = binom;
      w_[i][j] = ((j - i) % 2 == 0) ? binom : -binom;
      binom = binom * static_cast<double>(m - j) / static_cast<double>(j - i + 1);
    }
  }
}

double SpectralDecomposition::occupancy_probability(std::uint64_t n, std::uint64_t t, std::uint64_t k) const {
  if (t > m_ || k > m_) throw DomainError("state outside 0..m");
  double sum = 0.0;
  for (std::uint64_t i = t; i <= k; ++i) sum += std::pow(eigenvalues_[i], static_cast<double>(n)) * v_[t][i] * w_[i][k];
  return sum;
}

std::vector<double> SpectralDecomposition::row(std::uint64_t n, std::uint64_t t) const {
  std::vector<double> out(m_ + 1, 0.0);
  for (std::uint64_t k = t; k <= m_; ++k) out[k] = occupancy_probability(n, t, k);
  return out;
}

std::vector<ExactReal> SpectralDecomposition::eigenvalues_exact() const {
  const ExactReal theta = ExactReal::from_double(theta_);
  const ExactReal bins = ExactReal::from_uint(m_);
  std::vector<ExactReal> out;
  out.reserve(m_ + 1);
  for (std::uint64_t i = 0; i <= m_; ++i) out.push_back(ExactReal(1) - theta * ExactReal::from_uint(m_ - i) / bins);
  return out;
}

ExactMatrix SpectralDecomposition::v_exact() const {
  ExactMatrix out(m_ + 1, std::vector<ExactReal>(m_ + 1, ExactReal(0)));
  for (std::uint64_t i = 0; i <= m_; ++i)
    for (std::uint64_t j = i; j <= m_; ++j) out[i][j] = exact_binomial(m_ - i, j - i);
  return out;
}

ExactMatrix SpectralDecomposition::w_exact() const {
  ExactMatrix out = v_exact();
  for (std::uint64_t i = 0; i <= m_; ++i)
    for (std::uint64_t j = i; j <= m_; ++j)
      if ((j - i) % 2 == 1) out[i][j] = -out[i][j];
  return out;
}

ExactReal SpectralDecomposition::occupancy_probability_exact(std::uint64_t n, std::uint64_t t, std::uint64_t k) const {
  if (t > m_ || k > m_) throw DomainError("state outside 0..m");
  const auto lambda = eigenvalues_exact();
  ExactReal sum(0);
  for (std::uint64_t i = t; i <= k; ++i) {
    ExactReal term = lambda[i].pow(n) * exact_binomial(m_ - t, i - t) * exact_binomial(m_ - i, k - i);
    if ((k - i) % 2 == 1) term = -term;
    sum += term;
  }
  return sum;
}

Matrix SpectralDecomposition::reconstruct() const {
  const auto lambda = eigenvalues_exact();
  const auto v = v_exact();
  const auto w = w_exact();
  Matrix out(m_ + 1, std::vector<double>(m_ + 1, 0.0));
  for (std::uint64_t r = 0; r <= m_; ++r) {
    for (std::uint64_t c = r; c <= m_; ++c) {
      ExactReal sum(0);
      for (std::uint64_t i = r; i <= c; ++i) sum += v[r][i] * lambda[i] * w[i][c];
      out[r][c] = sum.to_double();
    }
  }
  return out;
}

SpectralDecomposition spectral(std::uint64_t m, double theta) { return {m, theta}; }

std::vector<std::uint64_t> ProcessSample::occupancy_path() const {
  std::vector<std::uint64_t> path;
  path.reserve(assignments.size() + 1);
  std::vector<bool> seen(bin_counts.size(), false);
  std::uint64_t k = 0;
  path.push_back(k);
  for (std::uint64_t bin : assignments) {
    if (bin != 0 && !seen[bin - 1]) {
      seen[bin - 1] = true;
      ++k;
    }
    path.push_back(k);
  }
  return path;
}

ProcessSample simulate_process(std::uint64_t n, std::uint64_t m, double theta, StreamSeed seed) {
  validate_chain(m, theta);
  CounterRng rng(seed);
  ProcessSample sample;
  sample.assignments.reserve(n);
  sample.bin_counts.assign(m, 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::uint64_t bin = rng.below(m) + 1;
    const bool occupies = rng.uniform() < theta;
    if (!occupies) {
      sample.assignments.push_back(0);
      continue;
    }
    sample.assignments.push_back(bin);
    if (sample.bin_counts[bin - 1]++ == 0) ++sample.occupancy;
    ++sample.effective;
  }
  return sample;
}

std::uint64_t simulate_occupancy(std::uint64_t n, std::uint64_t m, double theta, StreamSeed seed) {
  validate_chain(m, theta);
  CounterRng rng(seed);
  std::vector<bool> occupied(m, false);
  std::uint64_t k = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::uint64_t bin = rng.below(m);
    if (rng.uniform() < theta && !occupied[bin]) {
      occupied[bin] = true;
      ++k;
    }
  }
  return k;
}

}  // namespace occkit
