#pragma once

// Doob-Martin convergence diagnostics for sequences of words: kernel ratios
// binom(y_k, w) / C(N(y_k), m)^2 against target pattern probabilities, and
// Kolmogorov distances of the empirical pairs (mu_k, nu_k) to the target pair.

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wordchain/measures.hpp"
#include "wordchain/words.hpp"

namespace wordchain {

/// binom(y, w) / C(N(y), m)^2: the law of the word obtained by keeping m random
/// a's and m random b's of y.
inline Rational kernel_ratio(const BalancedWord& y, const BalancedWord& w) {
  if (w.n() > y.n()) throw size_mismatch("kernel_ratio: N(w) > N(y)");
  BigInt c = binomial(static_cast<unsigned>(y.n()), static_cast<unsigned>(w.n()));
  return Rational(subword_count(y, w), c * c);
}

/// y_1, y_2, ... with N(y_k) nondecreasing.
class WordSequence {
 public:
  explicit WordSequence(std::vector<BalancedWord> words) : words_(std::move(words)) {
    if (words_.empty()) throw invalid_argument("word sequence is empty");
    for (std::size_t k = 1; k < words_.size(); ++k)
      if (words_[k].n() < words_[k - 1].n())
        throw invalid_argument("word sequence sizes must be nondecreasing");
  }

  const std::vector<BalancedWord>& words() const { return words_; }
  std::size_t size() const { return words_.size(); }
  std::size_t min_n() const { return words_.front().n(); }

 private:
  std::vector<BalancedWord> words_;
};

/// Boundary point estimate read off a single word.
struct BoundaryEstimate {
  AtomicPair pair;
  std::size_t n = 0;          ///< N(y)
  double grid_spacing = 0.0;  ///< atom spacing 1/(2N)
};

inline BoundaryEstimate limit_pair_estimate(const BalancedWord& y) {
  auto pair = empirical_pair(y);
  return {std::move(pair), y.n(), 1.0 / (2.0 * static_cast<double>(y.n()))};
}

/// Candidate limit: a canonical pair, or an atomic pair (e.g. another estimate).
using BoundaryTarget = std::variant<CanonicalPair, AtomicPair>;

struct ConvergenceConfig {
  double distance_tolerance = 0.15;
  std::size_t pattern_cap = kDefaultStepPatternCap;
};

struct PatternTrack {
  BalancedWord w;
  Rational target;              ///< μ^{⊗m}⊗ν^{⊗m}(S(w))
  std::vector<Rational> ratios;  ///< kernel_ratio(y_k, w), one per k
  std::vector<double> errors;    ///< |ratio - target|
};

struct StepDistance {
  std::size_t k = 0;
  std::size_t n = 0;
  double mu_distance = 0.0;
  double nu_distance = 0.0;
};

struct ConvergenceReport {
  std::vector<PatternTrack> patterns;
  std::vector<StepDistance> steps;
  double tolerance = 0.0;
  bool distances_within_tolerance = false;
  bool errors_decreasing = false;

  bool consistent() const { return distances_within_tolerance && errors_decreasing; }
  std::string verdict() const {
    return consistent() ? "consistent with convergence to the target pair"
                        : "not consistent with convergence to the target pair";
  }
};

namespace detail {

inline Measure01 target_mu(const BoundaryTarget& t) {
  if (const auto* c = std::get_if<CanonicalPair>(&t)) return c->mu();
  return std::get<AtomicPair>(t).mu;
}

inline Measure01 target_nu(const BoundaryTarget& t) {
  if (const auto* c = std::get_if<CanonicalPair>(&t)) return c->nu();
  return std::get<AtomicPair>(t).nu;
}

inline Rational target_pattern(const BoundaryTarget& t, const BalancedWord& w, std::size_t cap) {
  return std::visit([&](const auto& pair) { return pattern_prob_exact(pair, w, cap); }, t);
}

}  // namespace detail

/// Kernel-ratio tracks for every w with N(w) <= m_max plus per-k Kolmogorov
/// distances. Verdict: the final distances are within tolerance and the mean
/// kernel-ratio error over the second half of the sequence does not exceed the
/// first half's.
inline ConvergenceReport convergence_report(const WordSequence& seq, const BoundaryTarget& target,
                                            std::size_t m_max, const ConvergenceConfig& config = {}) {
  if (m_max > seq.min_n())
    throw invalid_argument("convergence_report: m_max exceeds the smallest N(y_k)");
  if (m_max > config.pattern_cap) throw cap_exceeded("convergence_report: m_max exceeds pattern cap");

  ConvergenceReport report;
  report.tolerance = config.distance_tolerance;
  for (std::size_t m = 1; m <= m_max; ++m)
    for (const auto& w : enumerate_balanced(m)) {
      PatternTrack track{w, detail::target_pattern(target, w, config.pattern_cap), {}, {}};
      for (const auto& y : seq.words()) {
        track.ratios.push_back(kernel_ratio(y, w));
        track.errors.push_back(to_double(abs(track.ratios.back() - track.target)));
      }
      report.patterns.push_back(std::move(track));
    }

  const Measure01 mu = detail::target_mu(target);
  const Measure01 nu = detail::target_nu(target);
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const auto& y = seq.words()[k];
    if (y.n() == 0) {
      report.steps.push_back({k + 1, 0, 1.0, 1.0});
      continue;
    }
    auto emp = empirical_pair(y);
    report.steps.push_back({k + 1, y.n(), weak_distance(Measure01(emp.mu), mu), weak_distance(Measure01(emp.nu), nu)});
  }

  const auto& last = report.steps.back();
  report.distances_within_tolerance =
      last.mu_distance <= config.distance_tolerance && last.nu_distance <= config.distance_tolerance;

  const std::size_t half = seq.size() / 2;
  double first = 0.0, second = 0.0;
  std::size_t n_first = 0, n_second = 0;
  for (const auto& track : report.patterns)
    for (std::size_t k = 0; k < track.errors.size(); ++k) {
      if (k < half) {
        first += track.errors[k];
        ++n_first;
      } else {
        second += track.errors[k];
        ++n_second;
      }
    }
  report.errors_decreasing =
      n_first == 0 || n_second == 0 || second / static_cast<double>(n_second) <= first / static_cast<double>(n_first);
  return report;
}

}  // namespace wordchain
