#pragma once

// The infinite bridge built from two exponential laws (competing exponentials),
// with closed-form word probabilities, transitions and harmonic function.

#include <string>
#include <utility>
#include <vector>

#include "wordchain/bridges.hpp"
#include "wordchain/kernels.hpp"
#include "wordchain/measures.hpp"

namespace wordchain {

/// Rates of the exponential laws for the a-values and the b-values.
struct RatePair {
  Rational alpha;
  Rational beta;

  RatePair(Rational a, Rational b) : alpha(std::move(a)), beta(std::move(b)) {
    if (alpha <= 0 || beta <= 0) throw invalid_argument("Plackett-Luce rates must be positive");
  }
};

/// A_i = #{j >= i : u_j = a}, B_i = #{j >= i : u_j = b}, for i = 1..2n (stored 0-based).
struct SuffixCounts {
  std::vector<std::size_t> a;
  std::vector<std::size_t> b;

  explicit SuffixCounts(const BalancedWord& u) : a(u.size()), b(u.size()) {
    std::size_t na = 0, nb = 0;
    for (std::size_t i = u.size(); i-- > 0;) {
      (u[i] == Letter::A ? na : nb)++;
      a[i] = na;
      b[i] = nb;
    }
  }
};

namespace detail {

/// ∏_i (A_i α + B_i β)
inline Rational suffix_rate_product(const RatePair& rates, const BalancedWord& u) {
  SuffixCounts counts(u);
  Rational prod = 1;
  for (std::size_t i = 0; i < u.size(); ++i)
    prod *= rates.alpha * static_cast<long long>(counts.a[i]) + rates.beta * static_cast<long long>(counts.b[i]);
  return prod;
}

}  // namespace detail

/// P{U_n^∞ = u} = (n!)^2 α^n β^n ∏_i 1/(A_i α + B_i β).
inline Rational pl_word_prob(const RatePair& rates, const BalancedWord& u) {
  const auto n = static_cast<unsigned>(u.n());
  BigInt nf = factorial(n);
  return Rational(nf * nf) * rational_pow(rates.alpha * rates.beta, n) /
         detail::suffix_rate_product(rates, u);
}

/// h(w) = (2m)! α^m β^m / ∏_i (A_i α + B_i β); h(∅) = 1.
inline Rational pl_harmonic(const RatePair& rates, const BalancedWord& w) {
  const auto m = static_cast<unsigned>(w.n());
  return Rational(factorial(2 * m)) * rational_pow(rates.alpha * rates.beta, m) /
         detail::suffix_rate_product(rates, w);
}

/// P{U_{n+1}^∞ = v | U_n^∞ = u} = binom(v,u) αβ ∏(A_i^n(u)α + B_i^n(u)β) / ∏(A_i^{n+1}(v)α + B_i^{n+1}(v)β).
inline Rational pl_transition(const RatePair& rates, const BalancedWord& u, const BalancedWord& v) {
  detail::require_step(u, v, 1, "pl_transition");
  BigInt c = subword_count(v, u);
  if (c == 0) return 0;
  return Rational(c) * rates.alpha * rates.beta * detail::suffix_rate_product(rates, u) /
         detail::suffix_rate_product(rates, v);
}

/// Sequential rule: with A a's and B b's left, the next letter is a with
/// probability Aα / (Aα + Bβ).
inline BalancedWord pl_sample(const RatePair& rates, std::size_t n, Rng& rng) {
  const double alpha = to_double(rates.alpha), beta = to_double(rates.beta);
  std::string out;
  out.reserve(2 * n);
  std::size_t left_a = n, left_b = n;
  while (left_a + left_b > 0) {
    double wa = alpha * static_cast<double>(left_a);
    double wb = beta * static_cast<double>(left_b);
    if (uniform01(rng) * (wa + wb) < wa) {
      out.push_back('a');
      --left_a;
    } else {
      out.push_back('b');
      --left_b;
    }
  }
  return BalancedWord(out);
}

/// Direct construction: sort n Exp(α) and n Exp(β) draws.
inline BalancedWord pl_sample_sorted(const RatePair& rates, std::size_t n, Rng& rng) {
  const double alpha = to_double(rates.alpha), beta = to_double(rates.beta);
  for (;;) {
    std::vector<double> xs(n), ys(n);
    for (auto& x : xs) x = exponential_draw(rng, alpha);
    for (auto& y : ys) y = exponential_draw(rng, beta);
    if (auto w = interleave(xs, ys)) return *w;
  }
}

/// A path U_0^∞, ..., U_n^∞ of the Plackett-Luce chain, built from one set of
/// exponential draws so successive words are consistent.
inline BridgePath pl_path(const RatePair& rates, std::size_t n, Rng& rng) {
  const double alpha = to_double(rates.alpha), beta = to_double(rates.beta);
  std::vector<double> xs, ys;
  BridgePath path;
  path.states.emplace_back();
  for (std::size_t k = 0; k < n; ++k) {
    xs.push_back(exponential_draw(rng, alpha));
    ys.push_back(exponential_draw(rng, beta));
    auto w = interleave(xs, ys);
    if (!w) {
      xs.pop_back();
      ys.pop_back();
      --k;
      continue;
    }
    path.states.push_back(*w);
  }
  return path;
}

}  // namespace wordchain
