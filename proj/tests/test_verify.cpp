#include <catch_amalgamated.hpp>

#include "wordchain/verify.hpp"

using namespace wordchain;

TEST_CASE("identity results record the first failure") {
  IdentityResult r{"demo"};
  CHECK_FALSE(r.passed());  // nothing checked yet
  r.record(true, [] { return "a"; });
  CHECK(r.passed());
  r.record(false, [] { return "b"; });
  r.record(false, [] { return "c"; });
  CHECK_FALSE(r.passed());
  CHECK(r.failures == 2);
  CHECK(r.first_failure == "b");
}

TEST_CASE("small instances of each identity pass") {
  TransitionTables tables;
  const auto pairs = fixtures::canonical_pairs();
  const auto rates = default_pl_rates();
  for (const auto& r : {verify_recurrence(5), verify_convolution(3), verify_exp(4),
                        verify_chapman_kolmogorov(tables, 3), verify_dm_kernel(3),
                        verify_backward_normalization(3), verify_bridge_conditionals(tables, 3),
                        verify_pattern_normalization(pairs, 2), verify_empirical_identity(4, 2),
                        verify_pl_normalization(rates, 3), verify_pl_harmonicity(rates, 2),
                        verify_h_harmonicity(pairs, 2)}) {
    INFO(r.name << ": " << r.first_failure);
    CHECK(r.passed());
  }
}

TEST_CASE("check counts") {
  // 1 + 2 + 4 + 8 = 15 words of length <= 3
  CHECK(verify_recurrence(3).checked == 15 * 15);
  // |W_0||W_1| + |W_0||W_2| + |W_1||W_2| = 2 + 6 + 12
  CHECK(verify_convolution(2).checked == 20);
  CHECK(verify_exp(3).checked == 15 * 15);
}

TEST_CASE("the identities detect a wrong value") {
  std::vector<fixtures::NamedPair> pairs = {{"lebesgue", CanonicalPair::lebesgue()}};
  CHECK(verify_pattern_normalization(pairs, 2).passed());
  IdentityResult r{"harmonicity of a non-harmonic function"};
  record_harmonicity(r, "N(w)+1", [](const BalancedWord& w) { return Rational(static_cast<long long>(w.n() + 1)); }, 2);
  CHECK_FALSE(r.passed());
  CHECK(r.failures == r.checked);
}

TEST_CASE("full suite") {
  std::size_t seen = 0;
  auto summary = verify_all([&](const IdentityResult&) { ++seen; });
  CHECK(seen == summary.results.size());
  CHECK(summary.results.size() == 12);
  for (const auto& r : summary.results) {
    INFO(r.name << ": " << r.first_failure);
    CHECK(r.passed());
  }
  CHECK(summary.passed());
}
