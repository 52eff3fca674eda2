#pragma once

// Words over {a,b}, the generalized binomial coefficient binom(w,v) and its
// matrix calculus.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wordchain/errors.hpp"
#include "wordchain/random.hpp"
#include "wordchain/rational.hpp"

namespace wordchain {

enum class Letter : char { A = 'a', B = 'b' };

inline constexpr std::size_t kDefaultBalancedCap = 12;
inline constexpr std::size_t kDefaultMatrixMaxLen = 6;

/// A finite word over {a,b}, stored as an ASCII string of 'a'/'b'.
class Word {
 public:
  Word() = default;

  explicit Word(std::string_view letters) : letters_(letters) {
    for (char c : letters_) {
      if (c == 'a')
        ++count_a_;
      else if (c != 'b')
        throw invalid_argument("word contains a letter outside {a,b}: '" + letters_ + "'");
    }
  }

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  std::size_t count_a() const { return count_a_; }
  std::size_t count_b() const { return letters_.size() - count_a_; }
  bool balanced() const { return count_a() == count_b(); }

  Letter operator[](std::size_t i) const { return static_cast<Letter>(letters_[i]); }
  const std::string& str() const { return letters_; }
  /// Human form: the empty word shows as "∅".
  std::string display() const { return letters_.empty() ? "∅" : letters_; }

  void push_back(Letter l) {
    letters_.push_back(static_cast<char>(l));
    if (l == Letter::A) ++count_a_;
  }

  /// Length first, then lexicographic with a < b.
  friend std::strong_ordering operator<=>(const Word& x, const Word& y) {
    if (auto c = x.size() <=> y.size(); c != 0) return c;
    return x.letters_ <=> y.letters_;
  }
  friend bool operator==(const Word& x, const Word& y) { return x.letters_ == y.letters_; }

 private:
  std::string letters_;
  std::size_t count_a_ = 0;
};

/// A word with n letters a and n letters b; a state of the chain at time n.
class BalancedWord {
 public:
  BalancedWord() = default;

  explicit BalancedWord(Word w) : word_(std::move(w)) {
    if (!word_.balanced())
      throw invalid_argument("word is not balanced: '" + word_.str() + "'");
  }
  explicit BalancedWord(std::string_view letters) : BalancedWord(Word(letters)) {}

  /// N(w): number of a's (= number of b's).
  std::size_t n() const { return word_.count_a(); }
  std::size_t size() const { return word_.size(); }
  const Word& word() const { return word_; }
  const std::string& str() const { return word_.str(); }
  std::string display() const { return word_.display(); }
  Letter operator[](std::size_t i) const { return word_[i]; }

  friend std::strong_ordering operator<=>(const BalancedWord&, const BalancedWord&) = default;
  friend bool operator==(const BalancedWord&, const BalancedWord&) = default;

 private:
  Word word_;
};

/// binom(w, v): number of order-preserving embeddings of v into w.
inline BigInt subword_count(const Word& w, const Word& v) {
  if (v.size() > w.size()) return 0;
  std::vector<BigInt> ways(v.size() + 1);
  ways[0] = 1;
  for (std::size_t i = 0; i < w.size(); ++i) {
    std::size_t hi = std::min(i + 1, v.size());
    for (std::size_t j = hi; j >= 1; --j)
      if (w[i] == v[j - 1]) ways[j] += ways[j - 1];
  }
  return ways[v.size()];
}

inline BigInt subword_count(const BalancedWord& w, const BalancedWord& v) {
  return subword_count(w.word(), v.word());
}

namespace detail {

inline void enumerate_rec(std::size_t a_left, std::size_t b_left, std::string& prefix,
                          std::vector<BalancedWord>& out) {
  if (a_left == 0 && b_left == 0) {
    out.emplace_back(prefix);
    return;
  }
  if (a_left > 0) {
    prefix.push_back('a');
    enumerate_rec(a_left - 1, b_left, prefix, out);
    prefix.pop_back();
  }
  if (b_left > 0) {
    prefix.push_back('b');
    enumerate_rec(a_left, b_left - 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace detail

/// All C(2n,n) balanced words of size n, in lexicographic order (a < b).
inline std::vector<BalancedWord> enumerate_balanced(std::size_t n,
                                                    std::size_t cap = kDefaultBalancedCap) {
  if (n > cap)
    throw cap_exceeded("enumerate_balanced: n = " + std::to_string(n) + " exceeds cap " +
                       std::to_string(cap));
  std::vector<BalancedWord> out;
  out.reserve(binomial(static_cast<unsigned>(2 * n), static_cast<unsigned>(n))
                  .convert_to<std::size_t>());
  std::string prefix;
  detail::enumerate_rec(n, n, prefix, out);
  return out;
}

/// Position of `w` in enumerate_balanced(w.n()).
inline std::size_t balanced_rank(const BalancedWord& w) {
  std::size_t rank = 0;
  auto a_left = static_cast<unsigned>(w.n());
  auto b_left = static_cast<unsigned>(w.n());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == Letter::A) {
      --a_left;
    } else {
      // every word with an 'a' here sorts earlier
      if (a_left > 0) rank += binomial(a_left - 1 + b_left, a_left - 1).convert_to<std::size_t>();
      --b_left;
    }
  }
  return rank;
}

/// All words over {a,b} of length <= max_len, ordered by length then lexicographically.
inline std::vector<Word> enumerate_words(std::size_t max_len) {
  std::vector<Word> out{Word()};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (char c : {'a', 'b'}) out.emplace_back(out[i].str() + c);
    }
    begin = end;
  }
  return out;
}

/// M(v,w) for every w in W_{n+1}: the number of ways to obtain w by inserting
/// one a into the 2n+1 slots of v and then one b into the 2n+2 slots.
inline std::map<BalancedWord, std::uint64_t> successors(const BalancedWord& v) {
  std::map<BalancedWord, std::uint64_t> out;
  const std::string& s = v.str();
  for (std::size_t i = 0; i <= s.size(); ++i) {
    std::string with_a = s;
    with_a.insert(with_a.begin() + static_cast<std::ptrdiff_t>(i), 'a');
    for (std::size_t j = 0; j <= with_a.size(); ++j) {
      std::string with_b = with_a;
      with_b.insert(with_b.begin() + static_cast<std::ptrdiff_t>(j), 'b');
      ++out[BalancedWord(with_b)];
    }
  }
  return out;
}

/// Uniformly selects m of the a's and m of the b's of w, keeping relative order.
inline BalancedWord random_subword(const BalancedWord& w, std::size_t m, Rng& rng) {
  if (m > w.n())
    throw invalid_argument("random_subword: m = " + std::to_string(m) + " exceeds N(w) = " +
                           std::to_string(w.n()));
  std::vector<std::size_t> a_pos, b_pos;
  for (std::size_t i = 0; i < w.size(); ++i) (w[i] == Letter::A ? a_pos : b_pos).push_back(i);
  std::vector<std::size_t> chosen;
  chosen.reserve(2 * m);
  std::sample(a_pos.begin(), a_pos.end(), std::back_inserter(chosen), m, rng);
  std::sample(b_pos.begin(), b_pos.end(), std::back_inserter(chosen), m, rng);
  std::sort(chosen.begin(), chosen.end());
  std::string out;
  out.reserve(chosen.size());
  for (auto p : chosen) out.push_back(w.str()[p]);
  return BalancedWord(out);
}

/// Square matrix over a word index: entry (v, w) keyed by index position.
template <typename T>
struct WordMatrix {
  std::vector<Word> index;
  std::vector<std::vector<T>> entries;

  std::size_t size() const { return index.size(); }

  std::size_t position(const Word& w) const {
    auto it = std::lower_bound(index.begin(), index.end(), w);
    if (it == index.end() || !(*it == w)) throw invalid_argument("word not in matrix index");
    return static_cast<std::size_t>(it - index.begin());
  }

  const T& at(const Word& v, const Word& w) const { return entries[position(v)][position(w)]; }
};

using CountMatrix = WordMatrix<BigInt>;
using RationalMatrix = WordMatrix<Rational>;

struct CountMatrices {
  CountMatrix p;  ///< binom(w, v) for all v, w
  CountMatrix h;  ///< binom(w, v) when |w| = |v| + 1, else 0
};

/// P and H over all {a,b}-words of length <= max_len.
inline CountMatrices build_count_matrices(std::size_t max_len,
                                          std::size_t budget = kDefaultMatrixMaxLen) {
  if (max_len > budget)
    throw cap_exceeded("build_count_matrices: max_len = " + std::to_string(max_len) +
                       " exceeds budget " + std::to_string(budget));
  CountMatrices out;
  auto index = enumerate_words(max_len);
  const std::size_t n = index.size();
  out.p.index = index;
  out.h.index = std::move(index);
  out.p.entries.assign(n, std::vector<BigInt>(n));
  out.h.entries.assign(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const Word& v = out.p.index[i];
    for (std::size_t j = i; j < n; ++j) {
      const Word& w = out.p.index[j];
      BigInt c = subword_count(w, v);
      if (w.size() == v.size() + 1) out.h.entries[i][j] = c;
      out.p.entries[i][j] = std::move(c);
    }
  }
  return out;
}

/// exp(H) = sum_k H^k / k! for a nilpotent, strictly upper triangular H.
/// The series stops at the first vanishing power.
inline RationalMatrix nilpotent_exp(const CountMatrix& h) {
  const std::size_t n = h.size();
  RationalMatrix out;
  out.index = h.index;
  out.entries.assign(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) out.entries[i][i] = 1;

  std::vector<std::vector<BigInt>> power(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i) power[i][i] = 1;
  BigInt k_factorial = 1;
  for (unsigned k = 1; k <= n; ++k) {
    std::vector<std::vector<BigInt>> next(n, std::vector<BigInt>(n));
    bool nonzero = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = i; l < n; ++l) {
        if (power[i][l] == 0) continue;
        for (std::size_t j = l + 1; j < n; ++j)
          if (h.entries[l][j] != 0) next[i][j] += power[i][l] * h.entries[l][j];
      }
    for (const auto& row : next)
      for (const auto& x : row) nonzero = nonzero || x != 0;
    if (!nonzero) break;
    k_factorial *= k;
    power = std::move(next);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (power[i][j] != 0) out.entries[i][j] += Rational(power[i][j], k_factorial);
  }
  return out;
}

}  // namespace wordchain

template <>
struct std::hash<wordchain::BalancedWord> {
  std::size_t operator()(const wordchain::BalancedWord& w) const noexcept {
    return std::hash<std::string>{}(w.str());
  }
};
