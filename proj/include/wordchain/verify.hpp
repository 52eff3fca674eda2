#pragma once

// Exact-identity suite: every check runs in rational or big-integer arithmetic
// with zero tolerance and no randomness.

#include <chrono>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "wordchain/bridges.hpp"
#include "wordchain/fixtures.hpp"
#include "wordchain/kernels.hpp"
#include "wordchain/measures.hpp"
#include "wordchain/plackett_luce.hpp"
#include "wordchain/words.hpp"

namespace wordchain {

struct IdentityResult {
  explicit IdentityResult(std::string identity) : name(std::move(identity)) {}

  std::string name;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::string first_failure;
  double seconds = 0.0;

  bool passed() const { return failures == 0 && checked > 0; }

  void record(bool ok, const std::function<std::string()>& describe) {
    ++checked;
    if (ok) return;
    if (failures++ == 0) first_failure = describe();
  }
};

struct VerifySummary {
  std::vector<IdentityResult> results;

  bool passed() const {
    for (const auto& r : results)
      if (!r.passed()) return false;
    return !results.empty();
  }
  std::size_t total_checked() const {
    std::size_t n = 0;
    for (const auto& r : results) n += r.checked;
    return n;
  }
};

/// binom(w'y, v'x) = binom(w', v'x) + [x = y] binom(w', v'), binom(w, ∅) = 1 and
/// binom(w, v) = 0 for |v| > |w|, over all words with |v|, |w| <= max_len.
inline IdentityResult verify_recurrence(std::size_t max_len = 8) {
  IdentityResult r{"recurrence closure"};
  auto words = enumerate_words(max_len);
  for (const auto& w : words)
    for (const auto& v : words) {
      auto describe = [&] { return "binom(" + w.display() + ", " + v.display() + ")"; };
      BigInt c = subword_count(w, v);
      if (v.empty()) {
        r.record(c == 1, describe);
      } else if (v.size() > w.size()) {
        r.record(c == 0, describe);
      } else {
        Word w_head(std::string_view(w.str()).substr(0, w.size() - 1));
        Word v_head(std::string_view(v.str()).substr(0, v.size() - 1));
        BigInt expected = subword_count(w_head, v);
        if (w[w.size() - 1] == v[v.size() - 1]) expected += subword_count(w_head, v_head);
        r.record(c == expected, describe);
      }
    }
  return r;
}

/// Σ_{v ∈ W_{m+1}} binom(v,u) binom(w,v) = binom(w,u) (n+1)^2 for u ∈ W_m,
/// w ∈ W_{m+n+1}.
inline IdentityResult verify_convolution(std::size_t max_total = 4) {
  IdentityResult r{"convolution identity"};
  for (std::size_t total = 1; total <= max_total; ++total)
    for (std::size_t m = 0; m < total; ++m) {
      const std::size_t n = total - m - 1;
      auto mid = enumerate_balanced(m + 1);
      for (const auto& u : enumerate_balanced(m))
        for (const auto& w : enumerate_balanced(total)) {
          BigInt lhs = 0;
          for (const auto& v : mid) lhs += subword_count(v, u) * subword_count(w, v);
          BigInt rhs = subword_count(w, u) * BigInt((n + 1) * (n + 1));
          r.record(lhs == rhs, [&] { return "u=" + u.display() + " w=" + w.display(); });
        }
    }
  return r;
}

/// exp(H) = P entrywise over all words of length <= max_len.
inline IdentityResult verify_exp(std::size_t max_len = 5) {
  IdentityResult r{"exp(H) = P"};
  auto mats = build_count_matrices(max_len, max_len);
  auto e = nilpotent_exp(mats.h);
  for (std::size_t i = 0; i < mats.p.size(); ++i)
    for (std::size_t j = 0; j < mats.p.size(); ++j)
      r.record(e.entries[i][j] == Rational(mats.p.entries[i][j]), [&] {
        return "entry (" + mats.p.index[i].display() + ", " + mats.p.index[j].display() + ")";
      });
  return r;
}

/// Tables composed from one-step insertion counts equal the closed form, rows sum to 1.
inline IdentityResult verify_chapman_kolmogorov(TransitionTables& tables, std::size_t max_n = 4) {
  IdentityResult r{"Chapman-Kolmogorov"};
  for (std::size_t m = 0; m <= max_n; ++m)
    for (std::size_t n = 0; m + n <= max_n; ++n) {
      const auto& t = tables.table(m, n);
      for (std::size_t i = 0; i < t.from.size(); ++i) {
        Rational row = 0;
        for (std::size_t j = 0; j < t.to.size(); ++j) {
          row += t.p[i][j];
          r.record(t.p[i][j] == multi_step_prob(t.from[i], t.to[j]),
                   [&] { return t.from[i].display() + " -> " + t.to[j].display(); });
        }
        r.record(row == 1, [&] { return "row " + t.from[i].display(); });
      }
    }
  return r;
}

/// K(v, w) = P^{m→n}(v, w) / P^{0→n}(∅, w) for all v, w with N(w) <= max_n.
inline IdentityResult verify_dm_kernel(std::size_t max_n = 4) {
  IdentityResult r{"Doob-Martin kernel ratio"};
  const BalancedWord empty;
  for (std::size_t big = 0; big <= max_n; ++big)
    for (const auto& w : enumerate_balanced(big)) {
      Rational base = multi_step_prob(empty, w);
      for (std::size_t m = 0; m <= big; ++m)
        for (const auto& v : enumerate_balanced(m))
          r.record(dm_kernel(v, w) == multi_step_prob(v, w) / base,
                   [&] { return "K(" + v.display() + ", " + w.display() + ")"; });
    }
  return r;
}

/// Σ_u binom(v,u)/N(v)^2 = 1 for every v with 1 <= N(v) <= max_n.
inline IdentityResult verify_backward_normalization(std::size_t max_n = 5) {
  IdentityResult r{"backward-kernel normalization"};
  for (std::size_t n = 1; n <= max_n; ++n) {
    auto below = enumerate_balanced(n - 1);
    for (const auto& v : enumerate_balanced(n)) {
      Rational sum = 0;
      for (const auto& u : below) sum += backward_prob(u, v);
      r.record(sum == 1, [&] { return "v=" + v.display(); });
    }
  }
  return r;
}

/// First-principles bridge conditionals equal binom(v,u)/(m+1)^2.
inline IdentityResult verify_bridge_conditionals(TransitionTables& tables, std::size_t max_n = 4) {
  IdentityResult r{"bridge_conditional_check"};
  for (std::size_t n = 1; n <= max_n; ++n)
    for (const auto& w : enumerate_balanced(n)) {
      auto report = bridge_conditional_check(w, tables);
      r.record(report.passed(), [&] { return "target " + w.display(); });
    }
  return r;
}

using NamedPairs = std::vector<fixtures::NamedPair>;

/// Σ_{w ∈ W_m} μ^{⊗m}⊗ν^{⊗m}(S(w)) = 1 for m <= max_m.
inline IdentityResult verify_pattern_normalization(const NamedPairs& pairs, std::size_t max_m = 3) {
  IdentityResult r{"pattern normalization"};
  for (const auto& [name, pair] : pairs)
    for (std::size_t m = 0; m <= max_m; ++m) {
      Rational total = 0;
      for (const auto& w : enumerate_balanced(m)) total += pattern_prob_exact(pair, w);
      r.record(total == 1, [&, n = name] { return n + " m=" + std::to_string(m) + " total " + to_string(total); });
    }
  return r;
}

/// (N^m)^2 μ_k^{⊗m}⊗ν_k^{⊗m}(S(w)) = (m!)^2 binom(y, w) for N(y) <= max_n, m <= max_m.
inline IdentityResult verify_empirical_identity(std::size_t max_n = 6, std::size_t max_m = 2) {
  IdentityResult r{"empirical identity"};
  for (std::size_t n = 1; n <= max_n; ++n)
    for (const auto& y : enumerate_balanced(n))
      for (std::size_t m = 0; m <= std::min(n, max_m); ++m) {
        auto report = empirical_identity_check(y, m);
        r.checked += report.checked;
        if (!report.passed()) {
          if (r.failures == 0) r.first_failure = "y=" + y.display() + " w=" + report.violations[0].w.display();
          r.failures += report.violations.size();
        }
      }
  return r;
}

inline std::vector<RatePair> default_pl_rates() {
  return {RatePair(2, 1), RatePair(3, 5), RatePair(1, 1)};
}

/// Σ_{u ∈ W_n} p_n(u) = 1, and α = β gives the uniform law 1/C(2n, n).
inline IdentityResult verify_pl_normalization(const std::vector<RatePair>& rates, std::size_t max_n = 4) {
  IdentityResult r{"Plackett-Luce normalization"};
  for (const auto& rate : rates)
    for (std::size_t n = 0; n <= max_n; ++n) {
      Rational total = 0;
      const bool equal = rate.alpha == rate.beta;
      Rational uniform(1, binomial(static_cast<unsigned>(2 * n), static_cast<unsigned>(n)));
      for (const auto& u : enumerate_balanced(n)) {
        Rational p = pl_word_prob(rate, u);
        total += p;
        if (equal) r.record(p == uniform, [&] { return "uniform law at " + u.display(); });
      }
      r.record(total == 1, [&] { return "n=" + std::to_string(n) + " total " + to_string(total); });
    }
  return r;
}

/// Σ_v P(u,v) h(v) = h(u) for N(u) <= max_n, given h on levels 0..max_n+1.
template <typename H>
void record_harmonicity(IdentityResult& r, const std::string& label, H&& h, std::size_t max_n) {
  std::vector<std::vector<Rational>> values(max_n + 2);
  for (std::size_t n = 0; n <= max_n + 1; ++n)
    for (const auto& w : enumerate_balanced(n)) values[n].push_back(h(w));
  for (std::size_t n = 0; n <= max_n; ++n) {
    auto next = enumerate_balanced(n + 1);
    auto level = enumerate_balanced(n);
    for (std::size_t i = 0; i < level.size(); ++i) {
      Rational sum = 0;
      for (std::size_t j = 0; j < next.size(); ++j) sum += one_step_prob(level[i], next[j]) * values[n + 1][j];
      r.record(sum == values[n][i], [&] { return label + " at " + level[i].display(); });
    }
  }
}

inline IdentityResult verify_pl_harmonicity(const std::vector<RatePair>& rates, std::size_t max_n = 3) {
  IdentityResult r{"Plackett-Luce harmonicity"};
  for (const auto& rate : rates)
    record_harmonicity(
        r, "rates (" + to_string(rate.alpha) + ", " + to_string(rate.beta) + ")",
        [&](const BalancedWord& w) { return pl_harmonic(rate, w); }, max_n);
  return r;
}

/// h-harmonicity for canonical pairs, plus h ≡ 1 for (λ, λ).
inline IdentityResult verify_h_harmonicity(const NamedPairs& pairs, std::size_t max_n = 3) {
  IdentityResult r{"h-harmonicity"};
  for (const auto& [name, pair] : pairs)
    record_harmonicity(r, name, [&](const BalancedWord& w) { return harmonic_h(pair, w); }, max_n);
  const auto lam = CanonicalPair::lebesgue();
  for (std::size_t n = 0; n <= max_n + 1; ++n)
    for (const auto& w : enumerate_balanced(n))
      r.record(harmonic_h(lam, w) == 1, [&] { return "h_lambda(" + w.display() + ") != 1"; });
  return r;
}

/// Runs the full suite in a fixed order. `progress` (optional) sees each result.
inline VerifySummary verify_all(const std::function<void(const IdentityResult&)>& progress = {}) {
  VerifySummary summary;
  TransitionTables tables;
  const auto pairs = fixtures::canonical_pairs();
  const auto rates = default_pl_rates();
  std::vector<std::function<IdentityResult()>> checks = {
      [] { return verify_recurrence(); },
      [] { return verify_convolution(); },
      [] { return verify_exp(); },
      [&] { return verify_chapman_kolmogorov(tables); },
      [] { return verify_dm_kernel(); },
      [] { return verify_backward_normalization(); },
      [&] { return verify_bridge_conditionals(tables); },
      [&] { return verify_pattern_normalization(pairs); },
      [] { return verify_empirical_identity(); },
      [&] { return verify_pl_normalization(rates); },
      [&] { return verify_pl_harmonicity(rates); },
      [&] { return verify_h_harmonicity(pairs); },
  };
  for (auto& check : checks) {
    auto start = std::chrono::steady_clock::now();
    auto result = check();
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (progress) progress(result);
    summary.results.push_back(std::move(result));
  }
  return summary;
}

}  // namespace wordchain
