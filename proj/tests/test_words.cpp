#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "wordchain/words.hpp"

using namespace wordchain;

TEST_CASE("subword_count examples") {
  CHECK(subword_count(Word("abbaba"), Word("bba")) == 4);
  CHECK(subword_count(Word("abab"), Word("ab")) == 3);
  CHECK(subword_count(Word("abab"), Word("ba")) == 1);
  CHECK(subword_count(Word("aab"), Word("abab")) == 0);
  for (auto s : {"", "a", "abba", "bbbbaaa"}) CHECK(subword_count(Word(s), Word()) == 1);
}

TEST_CASE("subword_count satisfies its defining recurrence") {
  auto words = enumerate_words(8);
  auto small = enumerate_words(4);
  for (const auto& w : words) {
    for (const auto& v : small) {
      if (v.size() > w.size()) {
        CHECK(subword_count(w, v) == 0);
        continue;
      }
      if (w.empty() || v.empty()) continue;
      // binom(w'y, v'x) = binom(w', v'x) + [x == y] binom(w', v')
      Word w_head(w.str().substr(0, w.size() - 1));
      Word v_head(v.str().substr(0, v.size() - 1));
      BigInt expected = subword_count(w_head, v);
      if (w[w.size() - 1] == v[v.size() - 1]) expected += subword_count(w_head, v_head);
      REQUIRE(subword_count(w, v) == expected);
    }
  }
}

TEST_CASE("subword_count matches brute-force embedding enumeration") {
  for (const auto& w : enumerate_words(7))
    for (const auto& v : enumerate_words(4))
      REQUIRE(subword_count(w, v) == oracle::embeddings(w.str(), v.str()));
}

TEST_CASE("one-letter words reduce to ordinary binomials") {
  for (unsigned p = 0; p <= 12; ++p)
    for (unsigned q = 0; q <= 12; ++q)
      CHECK(subword_count(Word(std::string(p, 'a')), Word(std::string(q, 'a'))) == binomial(p, q));
}

TEST_CASE("convolution identity over balanced words") {
  for (std::size_t m = 0; m <= 3; ++m)
    for (std::size_t n = 0; m + n + 1 <= 4; ++n)
      for (const auto& u : enumerate_balanced(m))
        for (const auto& w : enumerate_balanced(m + n + 1)) {
          BigInt lhs = 0;
          for (const auto& v : enumerate_balanced(m + 1))
            lhs += subword_count(v, u) * subword_count(w, v);
          REQUIRE(lhs == subword_count(w, u) * (n + 1) * (n + 1));
        }
}

TEST_CASE("enumerate_balanced") {
  auto w0 = enumerate_balanced(0);
  REQUIRE(w0.size() == 1);
  CHECK(w0[0].str().empty());

  auto w1 = enumerate_balanced(1);
  REQUIRE(w1.size() == 2);
  CHECK(w1[0].str() == "ab");
  CHECK(w1[1].str() == "ba");

  auto w2 = enumerate_balanced(2);
  REQUIRE(w2.size() == 6);
  CHECK(w2.front().str() == "aabb");
  CHECK(w2.back().str() == "bbaa");

  for (std::size_t n = 0; n <= 6; ++n) {
    auto words = enumerate_balanced(n);
    auto brute = oracle::balanced_words(n);
    REQUIRE(words.size() == brute.size());
    for (std::size_t i = 0; i < words.size(); ++i) {
      CHECK(words[i].str() == brute[i]);
      CHECK(balanced_rank(words[i]) == i);
    }
  }
  CHECK_THROWS_AS(enumerate_balanced(13), cap_exceeded);
  CHECK(enumerate_balanced(13, 13).size() == 10400600);
}

TEST_CASE("balanced words reject unbalanced input") {
  CHECK_THROWS_AS(BalancedWord("aab"), invalid_argument);
  CHECK_THROWS_AS(Word("abc"), invalid_argument);
  CHECK(BalancedWord("").display() == "∅");
}

TEST_CASE("successors") {
  auto s0 = successors(BalancedWord(""));
  CHECK(s0.size() == 2);
  CHECK(s0.at(BalancedWord("ab")) == 1);
  CHECK(s0.at(BalancedWord("ba")) == 1);

  auto s1 = successors(BalancedWord("ab"));
  std::map<std::string, std::uint64_t> expected{
      {"aabb", 4}, {"abab", 3}, {"abba", 2}, {"baab", 2}, {"baba", 1}};
  REQUIRE(s1.size() == expected.size());
  std::uint64_t total = 0;
  for (const auto& [w, c] : s1) {
    CHECK(expected.at(w.str()) == c);
    total += c;
  }
  CHECK(total == 12);
  CHECK(s1.count(BalancedWord("bbaa")) == 0);

  for (std::size_t n = 0; n <= 3; ++n)
    for (const auto& v : enumerate_balanced(n)) {
      auto succ = successors(v);
      std::uint64_t sum = 0;
      for (const auto& [w, c] : succ) sum += c;
      CHECK(sum == (2 * n + 2) * (2 * n + 1));
      for (const auto& w : enumerate_balanced(n + 1)) {
        auto it = succ.find(w);
        CHECK(subword_count(w, v) == (it == succ.end() ? 0 : it->second));
      }
    }
}

TEST_CASE("count matrices and exp(H) = P") {
  auto [p, h] = build_count_matrices(5);
  REQUIRE(p.size() == 63);
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(p.entries[i][i] == 1);
    CHECK(h.entries[i][i] == 0);
    for (std::size_t j = 0; j < i; ++j) {
      CHECK(p.entries[i][j] == 0);
      CHECK(h.entries[i][j] == 0);
    }
  }
  CHECK(p.at(Word("ab"), Word("abab")) == 3);
  CHECK(h.at(Word("ab"), Word("abab")) == 0);
  CHECK(h.at(Word("ab"), Word("abb")) == 2);

  auto e = nilpotent_exp(h);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) REQUIRE(e.entries[i][j] == Rational(p.entries[i][j]));

  CHECK_THROWS_AS(build_count_matrices(7), cap_exceeded);
}

TEST_CASE("random_subword") {
  Rng rng(7);
  BalancedWord w("abbaab");
  CHECK(random_subword(w, 3, rng) == w);
  CHECK(random_subword(w, 0, rng).str().empty());
  CHECK_THROWS_AS(random_subword(w, 4, rng), invalid_argument);

  // P(ab) = binom(abab, ab) / C(2,1)^2 = 3/4
  const std::size_t trials = 100000;
  std::size_t ab = 0;
  for (std::size_t t = 0; t < trials; ++t)
    if (random_subword(BalancedWord("abab"), 1, rng).str() == "ab") ++ab;
  double freq = static_cast<double>(ab) / trials;
  CHECK(std::abs(freq - 0.75) < 3 * std::sqrt(0.75 * 0.25 / trials));
}
