#pragma once

// Forward simulation of the growing-word chain, finite bridges (sampled
// backward by uniform deletions), infinite bridges driven by a canonical pair,
// and the associated harmonic functions.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "wordchain/kernels.hpp"
#include "wordchain/measures.hpp"
#include "wordchain/random.hpp"
#include "wordchain/words.hpp"

namespace wordchain {

/// States U_0 = ∅, U_1, ..., U_n with N(U_k) = k and U_k a subword of U_{k+1}.
struct BridgePath {
  std::vector<BalancedWord> states;

  std::size_t length() const { return states.empty() ? 0 : states.size() - 1; }
  const BalancedWord& back() const { return states.back(); }

  bool valid() const {
    if (states.empty() || states.front().n() != 0) return false;
    for (std::size_t k = 0; k < states.size(); ++k) {
      if (states[k].n() != k) return false;
      if (k > 0 && subword_count(states[k], states[k - 1]) == 0) return false;
    }
    return true;
  }
};

/// One step of the base chain: insert a into one of the 2k+1 slots, then b
/// into one of the 2k+2 slots.
inline BalancedWord forward_step(const BalancedWord& v, Rng& rng) {
  std::string word = v.str();
  word.insert(word.begin() + static_cast<std::ptrdiff_t>(uniform_index(rng, word.size() + 1)), 'a');
  word.insert(word.begin() + static_cast<std::ptrdiff_t>(uniform_index(rng, word.size() + 1)), 'b');
  return BalancedWord(word);
}

inline BridgePath simulate_forward(std::size_t n, Rng& rng) {
  BridgePath path;
  path.states.reserve(n + 1);
  path.states.emplace_back();
  for (std::size_t k = 0; k < n; ++k) path.states.push_back(forward_step(path.states.back(), rng));
  return path;
}

/// Deletes one a and one b of v uniformly at random.
inline BalancedWord delete_random_pair(const BalancedWord& v, Rng& rng) {
  std::vector<std::size_t> a_pos, b_pos;
  for (std::size_t i = 0; i < v.size(); ++i) (v[i] == Letter::A ? a_pos : b_pos).push_back(i);
  std::size_t ia = a_pos[uniform_index(rng, a_pos.size())];
  std::size_t ib = b_pos[uniform_index(rng, b_pos.size())];
  std::string out;
  out.reserve(v.size() - 2);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (i != ia && i != ib) out.push_back(v.str()[i]);
  return BalancedWord(out);
}

/// The chain from ∅ conditioned on U_{N(w)} = w, run backward from w with the
/// universal deletion kernel.
inline BridgePath sample_finite_bridge(const BalancedWord& w, Rng& rng) {
  BridgePath path;
  path.states.resize(w.n() + 1);
  path.states[w.n()] = w;
  for (std::size_t k = w.n(); k > 0; --k) path.states[k - 1] = delete_random_pair(path.states[k], rng);
  return path;
}

/// U_n^∞ = W(X_1..X_n, Y_1..Y_n) with X_i ~ mu, Y_i ~ nu i.i.d.
/// Keeps the latent samples so earlier states and order statistics stay available.
class InfiniteBridge {
 public:
  InfiniteBridge(CanonicalPair pair, Rng rng) : pair_(std::move(pair)), rng_(std::move(rng)) {}

  const CanonicalPair& pair() const { return pair_; }
  const std::vector<double>& x_samples() const { return xs_; }
  const std::vector<double>& y_samples() const { return ys_; }
  std::size_t size() const { return xs_.size(); }

  /// Draws X_{n+1}, Y_{n+1} and returns U_{n+1}^∞.
  BalancedWord extend() {
    double x, y;
    // ties have probability zero; redraw on floating-point collision
    do {
      x = pair_.mu().sample(rng_);
    } while (collides(x));
    insert_sorted(x, 'a');
    do {
      y = pair_.nu().sample(rng_);
    } while (collides(y));
    insert_sorted(y, 'b');
    xs_.push_back(x);
    ys_.push_back(y);
    return word();
  }

  BalancedWord word() const {
    std::string out;
    out.reserve(sorted_.size());
    for (const auto& [value, letter] : sorted_) out.push_back(letter);
    return BalancedWord(out);
  }

  /// U_k^∞ for k <= size(), from the first k samples of each kind.
  BalancedWord word_at(std::size_t k) const {
    if (k > size()) throw invalid_argument("InfiniteBridge::word_at: k beyond current size");
    std::vector<double> xs(xs_.begin(), xs_.begin() + static_cast<std::ptrdiff_t>(k));
    std::vector<double> ys(ys_.begin(), ys_.begin() + static_cast<std::ptrdiff_t>(k));
    return *interleave(xs, ys);
  }

  BridgePath path() const {
    BridgePath p;
    for (std::size_t k = 0; k <= size(); ++k) p.states.push_back(word_at(k));
    return p;
  }

 private:
  bool collides(double v) const {
    auto it = std::lower_bound(sorted_.begin(), sorted_.end(), std::make_pair(v, '\0'));
    return it != sorted_.end() && it->first == v;
  }

  void insert_sorted(double v, char letter) {
    auto item = std::make_pair(v, letter);
    sorted_.insert(std::lower_bound(sorted_.begin(), sorted_.end(), item), item);
  }

  CanonicalPair pair_;
  Rng rng_;
  std::vector<double> xs_, ys_;
  std::vector<std::pair<double, char>> sorted_;
};

/// h(w) = C(2m,m) μ^{⊗m}⊗ν^{⊗m}(S(w)), normalized so h(∅) = 1.
inline Rational harmonic_h(const CanonicalPair& pair, const BalancedWord& w,
                           std::size_t cap = kDefaultStepPatternCap) {
  const auto m = static_cast<unsigned>(w.n());
  return Rational(binomial(2 * m, m)) * pattern_prob_exact(pair, w, cap);
}

/// The extended Doob-Martin kernel w ↦ K(w, y) at the boundary point of the pair.
inline Rational extended_kernel(const CanonicalPair& pair, const BalancedWord& w,
                                std::size_t cap = kDefaultStepPatternCap) {
  return harmonic_h(pair, w, cap);
}

/// P{U_{n+1}^∞ = v | U_n^∞ = u} = h(u)^{-1} P(u,v) h(v).
inline Rational htransform_step_prob(const CanonicalPair& pair, const BalancedWord& u,
                                     const BalancedWord& v,
                                     std::size_t cap = kDefaultStepPatternCap) {
  detail::require_step(u, v, 1, "htransform_step_prob");
  Rational hu = harmonic_h(pair, u, cap);
  if (hu == 0)
    throw zero_probability_state("htransform_step_prob: h(" + u.display() +
                                 ") = 0, state is outside the h-chain's support");
  Rational p = one_step_prob(u, v);
  if (p == 0) return 0;
  return p * harmonic_h(pair, v, cap) / hu;
}

}  // namespace wordchain
