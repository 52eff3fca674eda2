#pragma once

// Labeled bridges and exchangeable random total orders on {a_1, b_1, a_2, ...}:
// consistent uniform labeling, the (ζ, η) construction, and finite-depth
// estimators of the metric d, the embedding f and the moments of (μ, ν).

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wordchain/bridges.hpp"
#include "wordchain/measures.hpp"
#include "wordchain/stats.hpp"

namespace wordchain {

struct LabeledLetter {
  Letter kind = Letter::A;
  std::size_t index = 1;

  static LabeledLetter parse(std::string_view token) {
    if (token.size() < 2 || (token[0] != 'a' && token[0] != 'b'))
      throw invalid_argument("malformed labeled letter: '" + std::string(token) + "'");
    std::size_t index = 0;
    for (char c : token.substr(1)) {
      if (c < '0' || c > '9') throw invalid_argument("malformed labeled letter: '" + std::string(token) + "'");
      index = index * 10 + static_cast<std::size_t>(c - '0');
    }
    if (index == 0) throw invalid_argument("labeled letter index must be >= 1");
    return {static_cast<Letter>(token[0]), index};
  }

  std::string str() const { return static_cast<char>(kind) + std::to_string(index); }

  friend auto operator<=>(const LabeledLetter&, const LabeledLetter&) = default;
};

/// A word over {a_1, b_1, ..., a_n, b_n} using each letter once: the order ≺ⁿ.
class OrderPrefix {
 public:
  OrderPrefix() = default;

  explicit OrderPrefix(std::vector<LabeledLetter> letters) : letters_(std::move(letters)) {
    if (letters_.size() % 2 != 0) throw invalid_argument("order prefix has odd length");
    const std::size_t n = letters_.size() / 2;
    std::vector<int> seen_a(n + 1, 0), seen_b(n + 1, 0);
    for (const auto& l : letters_) {
      if (l.index < 1 || l.index > n)
        throw invalid_argument("order prefix label " + l.str() + " out of range 1.." + std::to_string(n));
      auto& seen = l.kind == Letter::A ? seen_a : seen_b;
      if (seen[l.index]++) throw invalid_argument("order prefix repeats " + l.str());
    }
  }

  /// Parses space-separated tokens such as "a2 b1 a1 b2".
  static OrderPrefix parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<LabeledLetter> letters;
    for (std::string tok; in >> tok;) letters.push_back(LabeledLetter::parse(tok));
    return OrderPrefix(std::move(letters));
  }

  std::size_t n() const { return letters_.size() / 2; }
  const std::vector<LabeledLetter>& letters() const { return letters_; }

  std::string str() const {
    std::string out;
    for (const auto& l : letters_) {
      if (!out.empty()) out.push_back(' ');
      out += l.str();
    }
    return out;
  }

  BalancedWord unlabel() const {
    std::string out;
    for (const auto& l : letters_) out.push_back(static_cast<char>(l.kind));
    return BalancedWord(out);
  }

  /// Deletes every letter with index > p.
  OrderPrefix restrict(std::size_t p) const {
    std::vector<LabeledLetter> out;
    for (const auto& l : letters_)
      if (l.index <= p) out.push_back(l);
    return OrderPrefix(std::move(out));
  }

  friend auto operator<=>(const OrderPrefix&, const OrderPrefix&) = default;

 private:
  std::vector<LabeledLetter> letters_;
};

/// Labels the letters of a bridge path consistently: label k goes to the a and
/// the b added at step k. Which a/b was added is resolved uniformly among the
/// deletion pairs of U_k that give U_{k-1}, which is the conditional law of the
/// uniform labeling given the path. Returns the prefixes at levels 0..n.
inline std::vector<OrderPrefix> label_uniformly(const BridgePath& path, Rng& rng) {
  if (!path.valid()) throw invalid_argument("label_uniformly: invalid bridge path");
  const std::size_t n = path.length();
  const BalancedWord& top = path.back();
  std::vector<std::size_t> labels(top.size(), 0);
  std::vector<std::size_t> alive(top.size());
  for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = i;

  for (std::size_t k = n; k > 0; --k) {
    const std::string& target = path.states[k - 1].str();
    std::vector<std::pair<std::size_t, std::size_t>> choices;
    for (std::size_t i = 0; i < alive.size(); ++i) {
      if (top[alive[i]] != Letter::A) continue;
      for (std::size_t j = 0; j < alive.size(); ++j) {
        if (top[alive[j]] != Letter::B) continue;
        std::string rest;
        for (std::size_t t = 0; t < alive.size(); ++t)
          if (t != i && t != j) rest.push_back(top.str()[alive[t]]);
        if (rest == target) choices.emplace_back(i, j);
      }
    }
    auto [i, j] = choices[uniform_index(rng, choices.size())];
    labels[alive[i]] = k;
    labels[alive[j]] = k;
    alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(std::max(i, j)));
    alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(std::min(i, j)));
  }

  std::vector<LabeledLetter> letters;
  for (std::size_t i = 0; i < top.size(); ++i) letters.push_back({top[i], labels[i]});
  OrderPrefix full(std::move(letters));
  std::vector<OrderPrefix> out;
  for (std::size_t p = 0; p <= n; ++p) out.push_back(full.restrict(p));
  return out;
}

/// One realization of an exchangeable order up to a finite depth: a_i sits at
/// a_values[i-1], b_j at b_values[j-1], and ≺ is the order of these values.
class OrderRun {
 public:
  OrderRun(std::vector<double> a_values, std::vector<double> b_values)
      : a_(std::move(a_values)), b_(std::move(b_values)) {
    if (a_.size() != b_.size()) throw invalid_argument("OrderRun: unequal a/b counts");
  }

  std::size_t depth() const { return a_.size(); }
  const std::vector<double>& a_values() const { return a_; }
  const std::vector<double>& b_values() const { return b_; }

  double value(const LabeledLetter& x) const {
    if (x.index < 1 || x.index > depth()) throw invalid_argument("OrderRun: label beyond depth");
    return x.kind == Letter::A ? a_[x.index - 1] : b_[x.index - 1];
  }

  bool precedes(const LabeledLetter& x, const LabeledLetter& y) const { return value(x) < value(y); }

  /// The labeled word at level p <= depth().
  OrderPrefix prefix(std::size_t p) const {
    std::vector<std::pair<double, LabeledLetter>> items;
    for (std::size_t i = 0; i < p; ++i) {
      items.push_back({a_[i], {Letter::A, i + 1}});
      items.push_back({b_[i], {Letter::B, i + 1}});
    }
    std::sort(items.begin(), items.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<LabeledLetter> letters;
    for (const auto& [v, l] : items) letters.push_back(l);
    return OrderPrefix(std::move(letters));
  }

  /// (1/2n) #{letters strictly between x and y} at depth n.
  double d_hat(const LabeledLetter& x, const LabeledLetter& y) const {
    if (x == y) return 0.0;
    double lo = std::min(value(x), value(y));
    double hi = std::max(value(x), value(y));
    auto between = [&](const std::vector<double>& vs) {
      return static_cast<double>(std::count_if(vs.begin(), vs.end(), [&](double v) { return lo < v && v < hi; }));
    };
    return (between(a_) + between(b_)) / (2.0 * static_cast<double>(depth()));
  }

  /// (1/2n) #{letters strictly below x} at depth n.
  double f_hat(const LabeledLetter& x) const {
    double vx = value(x);
    auto below = [&](const std::vector<double>& vs) {
      return static_cast<double>(std::count_if(vs.begin(), vs.end(), [&](double v) { return v < vx; }));
    };
    return (below(a_) + below(b_)) / (2.0 * static_cast<double>(depth()));
  }

 private:
  std::vector<double> a_;
  std::vector<double> b_;
};

/// The (ζ, η) construction: a_i ≺ a_j iff V_i < V_j etc., V_i ~ ζ, W_j ~ η.
inline OrderRun draw_parametric_run(const ParametricMeasure& zeta, const ParametricMeasure& eta,
                                    std::size_t n, Rng& rng) {
  std::vector<double> v(n), w(n);
  for (auto& x : v) x = sample_measure(zeta, rng);
  for (auto& x : w) x = sample_measure(eta, rng);
  // ties have probability zero; redraw any floating-point collision
  for (;;) {
    std::vector<std::pair<double, std::size_t>> all;
    for (std::size_t i = 0; i < n; ++i) {
      all.emplace_back(v[i], i);
      all.emplace_back(w[i], n + i);
    }
    std::sort(all.begin(), all.end());
    bool clean = true;
    for (std::size_t i = 1; i < all.size(); ++i) {
      if (all[i].first != all[i - 1].first) continue;
      clean = false;
      std::size_t slot = all[i].second;
      if (slot < n)
        v[slot] = sample_measure(zeta, rng);
      else
        w[slot - n] = sample_measure(eta, rng);
    }
    if (clean) break;
  }
  return OrderRun(std::move(v), std::move(w));
}

inline OrderPrefix order_from_parametric(const ParametricMeasure& zeta, const ParametricMeasure& eta,
                                         std::size_t n, Rng& rng) {
  return draw_parametric_run(zeta, eta, n, rng).prefix(n);
}

/// Source of exchangeable orders: a (ζ, η) pair, or an infinite bridge whose
/// latent samples X_i, Y_i place a_i and b_i.
class OrderSampler {
 public:
  struct Parametric {
    ParametricMeasure zeta;
    ParametricMeasure eta;
  };
  struct Bridge {
    CanonicalPair pair;
  };

  explicit OrderSampler(Parametric source) : source_(std::move(source)) {}
  explicit OrderSampler(Bridge source) : source_(std::move(source)) {}

  static OrderSampler parametric(ParametricMeasure zeta, ParametricMeasure eta) {
    return OrderSampler(Parametric{std::move(zeta), std::move(eta)});
  }
  static OrderSampler bridge(CanonicalPair pair) { return OrderSampler(Bridge{std::move(pair)}); }

  OrderRun draw(std::size_t depth, Rng& rng) const {
    if (const auto* p = std::get_if<Parametric>(&source_)) return draw_parametric_run(p->zeta, p->eta, depth, rng);
    InfiniteBridge bridge(std::get<Bridge>(source_).pair, Rng(rng()));
    for (std::size_t k = 0; k < depth; ++k) bridge.extend();
    return OrderRun(bridge.x_samples(), bridge.y_samples());
  }

 private:
  std::variant<Parametric, Bridge> source_;
};

struct DepthEstimate {
  Estimate estimate;
  std::size_t depth = 0;
};

inline void require_depth(std::size_t depth, std::initializer_list<LabeledLetter> letters) {
  for (const auto& l : letters)
    if (l.index > depth)
      throw invalid_argument("depth " + std::to_string(depth) + " is below label " + l.str());
}

/// Trial average of the depth-n estimate of d(x, y).
inline DepthEstimate estimate_d(const OrderSampler& sampler, const LabeledLetter& x,
                                const LabeledLetter& y, std::size_t depth, std::size_t trials,
                                Rng& rng) {
  if (x == y) return {{0.0, 0.0, 0}, depth};
  require_depth(depth, {x, y});
  Accumulator acc;
  for (std::size_t t = 0; t < trials; ++t) acc.add(sampler.draw(depth, rng).d_hat(x, y));
  return {acc.estimate(), depth};
}

/// Trial average of the depth-n estimate of f(x).
inline DepthEstimate estimate_f(const OrderSampler& sampler, const LabeledLetter& x,
                                std::size_t depth, std::size_t trials, Rng& rng) {
  require_depth(depth, {x});
  Accumulator acc;
  for (std::size_t t = 0; t < trials; ++t) acc.add(sampler.draw(depth, rng).f_hat(x));
  return {acc.estimate(), depth};
}

struct MomentEstimate {
  Estimate mu;
  Estimate nu;
};

/// Per-run statistic for ∫x^n dμ (a_{n+1} as pivot) or ∫y^n dν (b_{n+1}):
/// (1/2)^n Σ_{c ∈ ∏{a_k,b_k}} 1{c_1 ≺ pivot, ..., c_n ≺ pivot}. The sum over c
/// factorizes into ∏_k (1{a_k ≺ pivot} + 1{b_k ≺ pivot}).
inline double moment_statistic(const OrderRun& run, std::size_t n, Letter pivot_kind) {
  const LabeledLetter pivot{pivot_kind, n + 1};
  double prod = 1.0;
  for (std::size_t k = 1; k <= n; ++k) {
    int below = static_cast<int>(run.precedes({Letter::A, k}, pivot)) +
                static_cast<int>(run.precedes({Letter::B, k}, pivot));
    prod *= 0.5 * below;
  }
  return prod;
}

inline MomentEstimate moment_estimate(const OrderSampler& sampler, std::size_t n, std::size_t trials,
                                      Rng& rng) {
  if (n > 4) throw cap_exceeded("moment_estimate: n > 4");
  Accumulator mu, nu;
  for (std::size_t t = 0; t < trials; ++t) {
    auto run = sampler.draw(n + 1, rng);
    mu.add(moment_statistic(run, n, Letter::A));
    nu.add(moment_statistic(run, n, Letter::B));
  }
  return {mu.estimate(), nu.estimate()};
}

}  // namespace wordchain
