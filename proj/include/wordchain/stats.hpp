#pragma once

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "wordchain/errors.hpp"

namespace wordchain {

/// Monte Carlo mean with its standard error.
struct Estimate {
  double value = 0.0;
  double stderr_ = 0.0;
  std::size_t samples = 0;

  /// True when `target` lies within k standard errors. A zero standard error
  /// demands an exact match up to floating rounding.
  bool within(double target, double k = 3.0) const {
    double tol = k * stderr_;
    return std::abs(value - target) <= std::max(tol, 1e-12);
  }
};

/// Running mean/variance accumulator (Welford).
class Accumulator {
 public:
  void add(double x) {
    ++n_;
    double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
  }

  void merge(const Accumulator& other) {
    if (other.n_ == 0) return;
    if (n_ == 0) {
      *this = other;
      return;
    }
    auto n = n_ + other.n_;
    double delta = other.mean_ - mean_;
    mean_ += delta * static_cast<double>(other.n_) / static_cast<double>(n);
    m2_ += other.m2_ + delta * delta * static_cast<double>(n_) * static_cast<double>(other.n_) /
                           static_cast<double>(n);
    n_ = n;
  }

  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }

  Estimate estimate() const {
    double se = n_ > 0 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
    return {mean_, se, n_};
  }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Standard error of a binomial proportion with success probability p.
inline double binomial_sigma(double p, std::size_t trials) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

struct ChiSquareResult {
  double statistic = 0.0;
  unsigned dof = 0;
  double p_value = 1.0;

  bool passes(double alpha = 0.01) const { return p_value >= alpha; }
};

/// Pearson goodness-of-fit of observed counts against expected probabilities.
/// Cells with zero expected probability must have zero counts and are skipped.
inline ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed,
                                      std::span<const double> expected_probs) {
  if (observed.size() != expected_probs.size())
    throw invalid_argument("chi-square: observed/expected size mismatch");
  std::uint64_t total = 0;
  for (auto c : observed) total += c;
  ChiSquareResult r;
  unsigned cells = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    double e = expected_probs[i] * static_cast<double>(total);
    if (e <= 0.0) {
      if (observed[i] != 0) return {std::numeric_limits<double>::infinity(), 0, 0.0};
      continue;
    }
    double diff = static_cast<double>(observed[i]) - e;
    r.statistic += diff * diff / e;
    ++cells;
  }
  if (cells < 2) return r;
  r.dof = cells - 1;
  boost::math::chi_squared dist(r.dof);
  r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
  return r;
}

/// Two-sample chi-square test of homogeneity for two count vectors over the same cells.
inline ChiSquareResult chi_square_homogeneity(std::span<const std::uint64_t> first,
                                              std::span<const std::uint64_t> second) {
  if (first.size() != second.size())
    throw invalid_argument("chi-square: count vectors differ in size");
  double n1 = 0, n2 = 0;
  for (auto c : first) n1 += static_cast<double>(c);
  for (auto c : second) n2 += static_cast<double>(c);
  ChiSquareResult r;
  unsigned cells = 0;
  for (std::size_t i = 0; i < first.size(); ++i) {
    double col = static_cast<double>(first[i] + second[i]);
    if (col == 0) continue;
    double e1 = col * n1 / (n1 + n2);
    double e2 = col * n2 / (n1 + n2);
    double d1 = static_cast<double>(first[i]) - e1;
    double d2 = static_cast<double>(second[i]) - e2;
    r.statistic += d1 * d1 / e1 + d2 * d2 / e2;
    ++cells;
  }
  if (cells < 2) return r;
  r.dof = cells - 1;
  boost::math::chi_squared dist(r.dof);
  r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
  return r;
}

/// One-sample Kolmogorov-Smirnov statistic of `samples` against a continuous CDF.
inline double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double f = cdf(samples[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

/// Critical value of the one-sample KS statistic (Stephens' approximation).
/// alpha is 0.01 or 0.05.
inline double ks_critical(std::size_t n, double alpha = 0.01) {
  double c = alpha <= 0.01 ? 1.6276 : 1.3581;
  double sn = std::sqrt(static_cast<double>(n));
  return c / (sn + 0.12 + 0.11 / sn);
}

}  // namespace wordchain
