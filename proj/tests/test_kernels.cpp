#include <catch_amalgamated.hpp>

#include <thread>

#include "oracles.hpp"
#include "wordchain/kernels.hpp"

using namespace wordchain;

namespace {
BalancedWord bw(const char* s) { return BalancedWord(s); }
}  // namespace

TEST_CASE("one_step_prob") {
  // 4 of the 12 insertions of (a, b) into ab give aabb
  std::size_t hits = 0;
  for (const auto& [w, c] : successors(bw("ab")))
    if (w.str() == "aabb") hits = c;
  CHECK(Rational(hits, 12) == Rational(1, 3));
  CHECK(one_step_prob(bw("ab"), bw("aabb")) == Rational(1, 3));
  CHECK(one_step_prob(bw("ab"), bw("bbaa")) == 0);
  CHECK_THROWS_AS(one_step_prob(bw("ab"), bw("aaabbb")), size_mismatch);

  for (std::size_t n = 0; n <= 3; ++n)
    for (const auto& v : enumerate_balanced(n)) {
      Rational sum = 0;
      for (const auto& w : enumerate_balanced(n + 1)) sum += one_step_prob(v, w);
      REQUIRE(sum == 1);
    }
}

TEST_CASE("multi_step_prob") {
  for (const auto& w : enumerate_balanced(3)) CHECK(multi_step_prob(bw(""), w) == Rational(1, 20));
  for (const auto& v : enumerate_balanced(2)) CHECK(multi_step_prob(v, v) == 1);
  CHECK(multi_step_prob(bw("ab"), bw("aabb")) == one_step_prob(bw("ab"), bw("aabb")));
  CHECK_THROWS_AS(multi_step_prob(bw("aabb"), bw("ab")), size_mismatch);

  for (std::size_t n = 0; n <= 5; ++n) {
    Rational uniform(1, binomial(2 * n, n));
    for (const auto& w : enumerate_balanced(n)) REQUIRE(multi_step_prob(bw(""), w) == uniform);
  }
}

TEST_CASE("Chapman-Kolmogorov: composed one-step tables equal the closed form") {
  TransitionTables tables;
  for (std::size_t m = 0; m <= 4; ++m)
    for (std::size_t n = 0; m + n <= 4; ++n) {
      const auto& t = tables.table(m, n);
      for (std::size_t i = 0; i < t.from.size(); ++i) {
        Rational row = 0;
        for (std::size_t j = 0; j < t.to.size(); ++j) {
          REQUIRE(t.p[i][j] == multi_step_prob(t.from[i], t.to[j]));
          row += t.p[i][j];
        }
        REQUIRE(row == 1);
      }
    }
  CHECK_THROWS_AS(tables.table(4, 4), cap_exceeded);
}

TEST_CASE("TransitionTables are consistent under concurrent access") {
  TransitionTables tables;
  std::vector<Rational> seen(4);
  std::vector<std::thread> workers;
  for (std::size_t t = 0; t < seen.size(); ++t)
    workers.emplace_back([&, t] { seen[t] = tables.table(0, 4).at(bw(""), bw("abbaabab")); });
  for (auto& w : workers) w.join();
  for (const auto& s : seen) CHECK(s == Rational(1, 70));
}

TEST_CASE("dm_kernel") {
  for (const auto& w : enumerate_balanced(3)) CHECK(dm_kernel(bw(""), w) == 1);
  CHECK(dm_kernel(bw("ab"), bw("aabb")) == 2);
  CHECK(dm_kernel(bw("ab"), bw("bbaa")) == 0);

  for (std::size_t big = 0; big <= 4; ++big)
    for (const auto& w : enumerate_balanced(big))
      for (std::size_t m = 0; m <= big; ++m)
        for (const auto& v : enumerate_balanced(m)) {
          Rational k = dm_kernel(v, w);
          REQUIRE(k == multi_step_prob(v, w) / multi_step_prob(bw(""), w));
          REQUIRE(k <= 1 / multi_step_prob(bw(""), v));
        }
}

TEST_CASE("backward_prob") {
  CHECK(backward_prob(bw("ab"), bw("abab")) == Rational(3, 4));
  CHECK(backward_prob(bw("ba"), bw("abab")) == Rational(1, 4));
  CHECK(backward_prob(bw(""), bw("ab")) == 1);

  // against the 4 (a-position, b-position) deletion pairs of abab
  auto del = oracle::deletion_counts("abab");
  CHECK(del["ab"] == 3);
  CHECK(del["ba"] == 1);

  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& v : enumerate_balanced(n)) {
      Rational sum = 0;
      auto counts = oracle::deletion_counts(v.str());
      for (const auto& u : enumerate_balanced(n - 1)) {
        Rational p = backward_prob(u, v);
        sum += p;
        auto it = counts.find(u.str());
        REQUIRE(p == Rational(it == counts.end() ? 0 : it->second, n * n));
      }
      REQUIRE(sum == 1);
    }
}

TEST_CASE("bridge_conditional_check") {
  TransitionTables tables;
  auto ab = bridge_conditional_check(bw("ab"), tables);
  CHECK(ab.passed());
  CHECK(ab.pairs_checked == 1);
  CHECK(bridge_conditional_check(bw("abab"), tables).passed());
  for (const auto& w : enumerate_balanced(4)) {
    auto r = bridge_conditional_check(w, tables);
    CHECK(r.passed());
    CHECK(r.pairs_checked > 0);
  }
  CHECK_THROWS_AS(bridge_conditional_check(BalancedWord("aaaaaabbbbbb")), cap_exceeded);
}
