#pragma once

// Exact transition probabilities of the growing-word chain, the Doob-Martin
// kernel and the universal backward kernel.

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "wordchain/rational.hpp"
#include "wordchain/words.hpp"

namespace wordchain {

namespace detail {

inline void require_step(const BalancedWord& from, const BalancedWord& to, std::size_t step,
                         const char* op) {
  if (to.n() != from.n() + step)
    throw size_mismatch(std::string(op) + ": expected N(" + to.display() + ") = N(" +
                        from.display() + ") + " + std::to_string(step));
}

inline void require_not_smaller(const BalancedWord& from, const BalancedWord& to, const char* op) {
  if (to.n() < from.n())
    throw size_mismatch(std::string(op) + ": N(" + to.display() + ") < N(" + from.display() + ")");
}

}  // namespace detail

/// P{U_{m+1} = w | U_m = v} = M(v,w) / ((2m+2)(2m+1)), with M(v,w) = binom(w,v).
inline Rational one_step_prob(const BalancedWord& v, const BalancedWord& w) {
  detail::require_step(v, w, 1, "one_step_prob");
  const auto m = v.n();
  return Rational(subword_count(w, v), BigInt((2 * m + 2) * (2 * m + 1)));
}

/// P{U_{m+n} = w | U_m = v} = binom(w,v) n!^2 / ((2m+1)(2m+2)...(2m+2n)).
inline Rational multi_step_prob(const BalancedWord& v, const BalancedWord& w) {
  detail::require_not_smaller(v, w, "multi_step_prob");
  const auto m = static_cast<unsigned>(v.n());
  const auto n = static_cast<unsigned>(w.n() - v.n());
  BigInt den = 1;
  for (unsigned k = 2 * m + 1; k <= 2 * (m + n); ++k) den *= k;
  BigInt nf = factorial(n);
  return Rational(subword_count(w, v) * nf * nf, den);
}

/// Doob-Martin kernel with reference state ∅:
/// K(v,w) = binom(w,v) C(2m,m) / C(m+n,m)^2. Not bounded by 1.
inline Rational dm_kernel(const BalancedWord& v, const BalancedWord& w) {
  detail::require_not_smaller(v, w, "dm_kernel");
  const auto m = static_cast<unsigned>(v.n());
  const auto total = static_cast<unsigned>(w.n());
  BigInt c = binomial(total, m);
  return Rational(subword_count(w, v) * binomial(2 * m, m), c * c);
}

/// Universal backward kernel: P{U_m = u | U_{m+1} = v} = binom(v,u) / (m+1)^2.
/// Equivalently, delete one a and one b of v uniformly at random.
inline Rational backward_prob(const BalancedWord& u, const BalancedWord& v) {
  detail::require_step(u, v, 1, "backward_prob");
  const auto m1 = u.n() + 1;
  return Rational(subword_count(v, u), BigInt(m1 * m1));
}

/// Transition probabilities W_m -> W_{m+n}, rows and columns in enumerate_balanced order.
struct KernelTable {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<BalancedWord> from;
  std::vector<BalancedWord> to;
  std::vector<std::vector<Rational>> p;

  const Rational& at(const BalancedWord& u, const BalancedWord& w) const {
    if (u.n() != m || w.n() != m + n) throw size_mismatch("KernelTable::at: word sizes");
    return p[balanced_rank(u)][balanced_rank(w)];
  }
};

/// Multi-step tables built by composing one-step transitions (Chapman-Kolmogorov),
/// independent of the closed form in multi_step_prob. Built lazily per (m, n)
/// and memoized; safe for concurrent callers.
class TransitionTables {
 public:
  explicit TransitionTables(std::size_t cap = 7) : cap_(cap) {}

  const KernelTable& table(std::size_t m, std::size_t n) {
    if (m + n > cap_)
      throw cap_exceeded("TransitionTables: m + n = " + std::to_string(m + n) + " exceeds cap " +
                         std::to_string(cap_));
    std::unique_lock lock(mutex_);
    return table_locked(m, n);
  }

 private:
  const KernelTable& table_locked(std::size_t m, std::size_t n) {
    auto key = std::make_pair(m, n);
    if (auto it = tables_.find(key); it != tables_.end()) return *it->second;

    auto t = std::make_unique<KernelTable>();
    t->m = m;
    t->n = n;
    t->from = enumerate_balanced(m);
    t->to = enumerate_balanced(m + n);
    if (n == 0) {
      t->p.assign(t->from.size(), std::vector<Rational>(t->to.size()));
      for (std::size_t i = 0; i < t->from.size(); ++i) t->p[i][i] = 1;
    } else if (n == 1) {
      t->p.assign(t->from.size(), std::vector<Rational>(t->to.size()));
      const Rational slots(1, static_cast<long long>((2 * m + 2) * (2 * m + 1)));
      for (std::size_t i = 0; i < t->from.size(); ++i)
        for (const auto& [w, count] : successors(t->from[i]))
          t->p[i][balanced_rank(w)] = slots * static_cast<long long>(count);
    } else {
      const KernelTable& head = table_locked(m, n - 1);
      const KernelTable& last = table_locked(m + n - 1, 1);
      t->p.assign(t->from.size(), std::vector<Rational>(t->to.size()));
      for (std::size_t i = 0; i < head.from.size(); ++i)
        for (std::size_t k = 0; k < head.to.size(); ++k) {
          if (head.p[i][k] == 0) continue;
          for (std::size_t j = 0; j < last.to.size(); ++j)
            if (last.p[k][j] != 0) t->p[i][j] += head.p[i][k] * last.p[k][j];
        }
    }
    auto [it, inserted] = tables_.emplace(key, std::move(t));
    return *it->second;
  }

  std::size_t cap_;
  std::mutex mutex_;
  std::map<std::pair<std::size_t, std::size_t>, std::unique_ptr<KernelTable>> tables_;
};

struct BridgeViolation {
  std::size_t m = 0;
  BalancedWord u, v;
  Rational bridge_conditional, backward;
};

struct BridgeCheckReport {
  BalancedWord target;
  std::size_t pairs_checked = 0;
  std::vector<BridgeViolation> violations;

  bool passed() const { return violations.empty(); }
};

/// For the bridge to w, compares P{U_m^w = u | U_{m+1}^w = v}, computed from
/// composed forward transitions, against backward_prob(u, v) for all m, u, v.
inline BridgeCheckReport bridge_conditional_check(const BalancedWord& w,
                                                  TransitionTables& tables) {
  if (w.n() > 5) throw cap_exceeded("bridge_conditional_check: N(w) > 5");
  BridgeCheckReport report{w, 0, {}};
  const std::size_t big_n = w.n();
  for (std::size_t m = 0; m < big_n; ++m) {
    const KernelTable& from_root_m = tables.table(0, m);
    const KernelTable& from_root_m1 = tables.table(0, m + 1);
    const KernelTable& step = tables.table(m, 1);
    const KernelTable& to_target = tables.table(m + 1, big_n - m - 1);
    const std::size_t w_rank = balanced_rank(w);
    for (std::size_t j = 0; j < step.to.size(); ++j) {
      // P{U_{m+1} = v, U_N = w}
      Rational joint_v = from_root_m1.p[0][j] * to_target.p[j][w_rank];
      if (joint_v == 0) continue;
      for (std::size_t i = 0; i < step.from.size(); ++i) {
        Rational joint_uv = from_root_m.p[0][i] * step.p[i][j] * to_target.p[j][w_rank];
        Rational conditional = joint_uv / joint_v;
        Rational expected = backward_prob(step.from[i], step.to[j]);
        ++report.pairs_checked;
        if (conditional != expected)
          report.violations.push_back({m, step.from[i], step.to[j], conditional, expected});
      }
    }
  }
  return report;
}

inline BridgeCheckReport bridge_conditional_check(const BalancedWord& w) {
  TransitionTables tables;
  return bridge_conditional_check(w, tables);
}

}  // namespace wordchain
