#include <catch_amalgamated.hpp>

#include <map>

#include "wordchain/bridges.hpp"
#include "wordchain/parallel.hpp"
#include "wordchain/stats.hpp"

using namespace wordchain;

namespace {

Accumulator uniform_mean(std::size_t trials, unsigned jobs, std::uint64_t seed = 5) {
  return fan_out<Accumulator>(
      trials, FanOut{seed, "uniform", jobs, 1000},
      [](Rng& rng, std::size_t, std::size_t count) {
        Accumulator acc;
        for (std::size_t i = 0; i < count; ++i) acc.add(uniform01(rng));
        return acc;
      },
      [](Accumulator& a, const Accumulator& b) { a.merge(b); });
}

}  // namespace

TEST_CASE("fan-out results do not depend on the worker count") {
  auto one = uniform_mean(10'500, 1);
  for (unsigned jobs : {2u, 3u, 8u}) {
    auto many = uniform_mean(10'500, jobs);
    CHECK(many.count() == 10'500);
    CHECK(many.mean() == one.mean());
    CHECK(many.variance() == one.variance());
  }
  CHECK(one.estimate().within(0.5));
  CHECK(uniform_mean(10'500, 1, 6).mean() != one.mean());
}

TEST_CASE("fan-out histograms merge in block order") {
  using Hist = std::map<std::string, std::size_t>;
  auto run = [](unsigned jobs) {
    return fan_out<Hist>(
        3000, FanOut{9, "hist", jobs, 256},
        [](Rng& rng, std::size_t, std::size_t count) {
          Hist h;
          for (std::size_t i = 0; i < count; ++i) ++h[simulate_forward(2, rng).back().str()];
          return h;
        },
        [](Hist& a, const Hist& b) {
          for (const auto& [k, v] : b) a[k] += v;
        });
  };
  auto h1 = run(1);
  CHECK(h1 == run(4));
  CHECK(h1.size() == 6);
}

TEST_CASE("fan-out handles empty runs and propagates errors") {
  CHECK(uniform_mean(0, 4).count() == 0);
  CHECK_THROWS_AS(fan_out<int>(
                      100, FanOut{1, "x", 3, 10},
                      [](Rng&, std::size_t first, std::size_t) -> int {
                        if (first == 50) throw invalid_argument("boom");
                        return 1;
                      },
                      [](int& a, int b) { a += b; }),
                  invalid_argument);
}
