#include <catch_amalgamated.hpp>

#include "wordchain/boundary.hpp"
#include "wordchain/bridges.hpp"
#include "wordchain/fixtures.hpp"

using namespace wordchain;
using R = Rational;

namespace {

BalancedWord bw(const std::string& s) { return BalancedWord(s); }

WordSequence path_sequence(const BridgePath& path, std::size_t from) {
  return WordSequence({path.states.begin() + static_cast<std::ptrdiff_t>(from), path.states.end()});
}

BridgePath bridge_path(const CanonicalPair& pair, std::size_t n, std::uint64_t seed) {
  InfiniteBridge bridge(pair, Rng(seed));
  for (std::size_t k = 0; k < n; ++k) bridge.extend();
  return bridge.path();
}

}  // namespace

TEST_CASE("kernel_ratio") {
  CHECK(kernel_ratio(bw("abba"), bw("")) == 1);
  CHECK(kernel_ratio(bw("abab"), bw("ab")) == R(3, 4));
  for (std::size_t n = 1; n <= 20; ++n)
    CHECK(kernel_ratio(bw(std::string(n, 'a') + std::string(n, 'b')), bw("ab")) == 1);
  CHECK_THROWS_AS(kernel_ratio(bw("ab"), bw("aabb")), size_mismatch);
}

TEST_CASE("kernel ratios are the random-subword law") {
  for (std::size_t n = 1; n <= 6; ++n)
    for (const auto& y : enumerate_balanced(n)) {
      auto pair = empirical_pair(y);
      for (std::size_t m = 0; m <= std::min<std::size_t>(n, 2); ++m) {
        R total = 0;
        R falling = 1;
        for (std::size_t i = 0; i < m; ++i) falling *= static_cast<long long>(n - i);
        R scale = rational_pow(R(static_cast<long long>(n)), static_cast<unsigned>(m)) / falling;
        for (const auto& w : enumerate_balanced(m)) {
          R ratio = kernel_ratio(y, w);
          total += ratio;
          REQUIRE(ratio == pattern_prob_exact(pair, w) * scale * scale);
        }
        REQUIRE(total == 1);
      }
    }
}

TEST_CASE("limit_pair_estimate mirrors empirical_pair") {
  auto est = limit_pair_estimate(bw("abab"));
  CHECK(est.n == 2);
  CHECK(est.grid_spacing == 0.25);
  CHECK(est.pair.mu.atoms()[0].location == R(1, 4));
  CHECK(est.pair.nu.atoms()[1].location == 1);
  auto aabb = limit_pair_estimate(bw("aabb"));
  CHECK(aabb.pair.nu.atoms()[0].location == R(3, 4));
  CHECK_THROWS_AS(limit_pair_estimate(bw("")), invalid_argument);
}

TEST_CASE("word sequences validate") {
  CHECK_THROWS_AS(WordSequence({}), invalid_argument);
  CHECK_THROWS_AS(WordSequence({bw("aabb"), bw("ab")}), invalid_argument);
  CHECK_THROWS_AS(convergence_report(WordSequence({bw("ab")}), CanonicalPair::lebesgue(), 2), invalid_argument);
}

TEST_CASE("sorted words converge to the separated pair") {
  std::vector<BalancedWord> words;
  for (std::size_t k = 1; k <= 30; ++k) words.push_back(bw(std::string(k, 'a') + std::string(k, 'b')));
  auto report = convergence_report(WordSequence(words), CanonicalPair::separated(), 1);
  for (const auto& track : report.patterns)
    for (const auto& r : track.ratios) CHECK(r == (track.w.str() == "ab" ? 1 : 0));
  for (const auto& step : report.steps) {
    CHECK(step.mu_distance == Catch::Approx(1.0 / step.n));
    CHECK(step.nu_distance == Catch::Approx(1.0 / step.n));
  }
  CHECK(report.consistent());
}

TEST_CASE("base chain paths converge to (λ,λ)") {
  int good = 0;
  const int runs = 20;
  for (int r = 0; r < runs; ++r) {
    Rng rng(derive_seed(11, "base-chain", r));
    auto report = convergence_report(path_sequence(simulate_forward(200, rng), 2), CanonicalPair::lebesgue(), 2);
    const auto& last = report.steps.back();
    CHECK(last.n == 200);
    good += last.mu_distance < 0.15 && last.nu_distance < 0.15;
  }
  CHECK(good >= runs * 95 / 100);
}

TEST_CASE("h-transform paths converge to their pair") {
  const auto pair = fixtures::canonical_pairs()[2].pair;
  const int runs = 10;
  int good = 0;
  for (int r = 0; r < runs; ++r) {
    auto report = convergence_report(path_sequence(bridge_path(pair, 300, derive_seed(12, "h-chain", r)), 2), pair, 2);
    bool ok = true;
    for (const auto& track : report.patterns) ok = ok && track.errors.back() < 0.1;
    good += ok;
  }
  CHECK(good >= runs * 95 / 100);
}

TEST_CASE("the sequence's own estimate is the closest target") {
  Rng rng(13);
  auto seq = path_sequence(simulate_forward(60, rng), 2);
  auto own = limit_pair_estimate(seq.words().back()).pair;
  auto self = convergence_report(seq, own, 2);
  CHECK(self.steps.back().mu_distance == 0.0);
  CHECK(self.steps.back().nu_distance == 0.0);
  // sampling with and without replacement differ by the falling-factorial factor
  const auto n = static_cast<long long>(seq.words().back().n());
  for (const auto& track : self.patterns) {
    R scale = track.w.n() == 1 ? R(1) : R(n - 1, n);
    CHECK(track.target == track.ratios.back() * scale * scale);
  }
  for (const auto& [name, pair] : fixtures::canonical_pairs()) {
    auto other = convergence_report(seq, pair, 2);
    CHECK(self.steps.back().mu_distance <= other.steps.back().mu_distance);
    CHECK(self.steps.back().nu_distance <= other.steps.back().nu_distance);
  }
}
