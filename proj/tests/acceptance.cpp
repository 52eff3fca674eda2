// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "wordchain/boundary.hpp"
#include "wordchain/bridges.hpp"
#include "wordchain/fixtures.hpp"
#include "wordchain/orders.hpp"
#include "wordchain/parallel.hpp"
#include "wordchain/plackett_luce.hpp"
#include "wordchain/stats.hpp"
#include "wordchain/verify.hpp"

using namespace wordchain;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = false;
  std::string detail;
};

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string describe(const IdentityResult& r) {
  std::string s = r.name + ": " + std::to_string(r.checked) + " checks, " + std::to_string(r.failures) + " failures";
  if (r.failures) s += " (first: " + r.first_failure + ")";
  return s;
}

/// Samples `trials` words with `draw`, in parallel blocks with label-derived streams.
using Hist = std::map<BalancedWord, std::uint64_t>;
Hist histogram(std::size_t trials, const std::string& label, const std::function<BalancedWord(Rng&)>& draw) {
  return fan_out<Hist>(
      trials, FanOut{kSeed, label, workers(), 8192},
      [&](Rng& rng, std::size_t, std::size_t count) {
        Hist h;
        for (std::size_t i = 0; i < count; ++i) ++h[draw(rng)];
        return h;
      },
      [](Hist& a, const Hist& b) {
        for (const auto& [k, v] : b) a[k] += v;
      });
}

// 1
Outcome convolution() {
  auto start = std::chrono::steady_clock::now();
  auto r = verify_convolution(4);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {r.passed() && secs < 10.0, describe(r) + ", " + fmt(secs) + " s (limit 10 s)"};
}

// 2
Outcome exp_h() {
  auto start = std::chrono::steady_clock::now();
  auto r = verify_exp(5);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {r.passed() && secs < 30.0, describe(r) + ", " + fmt(secs) + " s (limit 30 s)"};
}

// 3
Outcome dm_kernel_ratio() {
  auto r = verify_dm_kernel(4);
  return {r.passed(), describe(r)};
}

// 4
Outcome bridge_backward() {
  TransitionTables tables;
  auto r = verify_bridge_conditionals(tables, 4);
  return {r.passed(), describe(r)};
}

// 5
Outcome base_uniformity() {
  const std::size_t trials = 200000;
  auto words = enumerate_balanced(3);
  bool analytic = words.size() == 20;
  for (const auto& w : words) analytic = analytic && multi_step_prob(BalancedWord(), w) == Rational(1, 20);
  auto hist = histogram(trials, "acceptance-uniformity", [](Rng& rng) { return simulate_forward(3, rng).back(); });
  std::vector<std::uint64_t> observed;
  for (const auto& w : words) observed.push_back(hist[w]);
  std::vector<double> probs(words.size(), 1.0 / 20.0);
  auto chi = chi_square_gof(observed, probs);
  return {analytic && chi.passes(0.01),
          std::string("exact marginal 1/20 on all 20 words: ") + (analytic ? "yes" : "no") + "; chi-square " +
              fmt(chi.statistic) + " on " + std::to_string(chi.dof) + " dof, p = " + fmt(chi.p_value) +
              " (2e5 samples, 1% level)"};
}

// 6
Outcome pattern_normalization() {
  const auto pairs = fixtures::canonical_pairs();
  auto exact = verify_pattern_normalization(pairs, 3);
  const std::size_t trials = 100000;
  std::size_t compared = 0, misses = 0;
  double worst = 0.0;
  for (const auto& [name, pair] : pairs)
    for (std::size_t m = 1; m <= 3; ++m) {
      std::vector<double> xs(m), ys(m);
      auto hist = histogram(trials, "acceptance-pattern-" + name + "-" + std::to_string(m), [&](Rng& rng) {
        for (;;) {
          for (auto& x : xs) x = pair.mu().sample(rng);
          for (auto& y : ys) y = pair.nu().sample(rng);
          if (auto w = interleave(xs, ys)) return *w;
        }
      });
      for (const auto& w : enumerate_balanced(m)) {
        double p = to_double(pattern_prob_exact(pair, w));
        double freq = static_cast<double>(hist[w]) / static_cast<double>(trials);
        double sigma = binomial_sigma(p, trials);
        double z = sigma > 0 ? std::abs(freq - p) / sigma : (freq == p ? 0.0 : INFINITY);
        worst = std::max(worst, z);
        ++compared;
        if (z > 3.0) ++misses;
      }
    }
  return {exact.passed() && misses == 0,
          describe(exact) + "; Monte Carlo: " + std::to_string(compared) + " cells at 1e5 draws, " +
              std::to_string(misses) + " beyond 3 sigma, max |z| = " + fmt(worst)};
}

// 7
Outcome harmonicity() {
  auto h = verify_h_harmonicity(fixtures::canonical_pairs(), 3);
  auto pl = verify_pl_harmonicity(default_pl_rates(), 3);
  return {h.passed() && pl.passed(), describe(h) + "; " + describe(pl)};
}

// 8
Outcome empirical() {
  auto r = verify_empirical_identity(6, 2);
  return {r.passed(), describe(r)};
}

// 9
Outcome plackett_luce() {
  auto uniform = verify_pl_normalization({RatePair(1, 1), RatePair(7, 7)}, 4);

  const RatePair rates(2, 1);
  const std::size_t trials = 60000;
  auto seq = histogram(trials, "acceptance-pl-sequential", [&](Rng& rng) { return pl_sample(rates, 2, rng); });
  auto sorted = histogram(trials, "acceptance-pl-sorted", [&](Rng& rng) { return pl_sample_sorted(rates, 2, rng); });
  std::size_t misses = 0;
  double worst = 0.0;
  std::vector<std::vector<std::uint64_t>> table(2);
  for (const auto& w : enumerate_balanced(2)) {
    double p = to_double(pl_word_prob(rates, w));
    double z = std::abs(static_cast<double>(seq[w]) / trials - p) / binomial_sigma(p, trials);
    worst = std::max(worst, z);
    if (z > 3.0) ++misses;
    table[0].push_back(seq[w]);
    table[1].push_back(sorted[w]);
  }
  auto chi = chi_square_homogeneity(table[0], table[1]);
  return {uniform.passed() && misses == 0 && chi.passes(0.01),
          "alpha = beta gives 1/C(2n,n) for n <= 4: " + std::string(uniform.passed() ? "yes" : "no") +
              "; rates (2,1) on W_2 at 6e4: max |z| = " + fmt(worst) + ", " + std::to_string(misses) +
              " beyond 3 sigma; sequential vs sorted chi-square p = " + fmt(chi.p_value)};
}

// 10
Outcome orders() {
  auto sampler = OrderSampler::bridge(CanonicalPair::lebesgue());
  bool ok = true;
  std::ostringstream detail;
  for (std::size_t n : {1u, 2u}) {
    const double target = 1.0 / static_cast<double>(n + 1);
    using Pair = std::pair<Accumulator, Accumulator>;
    auto [mu, nu] = fan_out<Pair>(
        100000, FanOut{kSeed, "acceptance-moments-" + std::to_string(n), workers(), 2048},
        [&](Rng& rng, std::size_t, std::size_t count) {
          Pair p;
          for (std::size_t i = 0; i < count; ++i) {
            auto run = sampler.draw(n + 1, rng);
            p.first.add(moment_statistic(run, n, Letter::A));
            p.second.add(moment_statistic(run, n, Letter::B));
          }
          return p;
        },
        [](Pair& a, const Pair& b) {
          a.first.merge(b.first);
          a.second.merge(b.second);
        });
    bool within = mu.estimate().within(target) && nu.estimate().within(target);
    ok = ok && within;
    detail << "n=" << n << ": (" << fmt(mu.mean()) << ", " << fmt(nu.mean()) << ") +- " << fmt(mu.estimate().stderr_)
           << " vs " << fmt(target) << "; ";
  }

  const std::vector<std::pair<LabeledLetter, LabeledLetter>> pairs = {
      {{Letter::A, 1}, {Letter::B, 1}}, {{Letter::A, 1}, {Letter::A, 2}}, {{Letter::B, 2}, {Letter::A, 3}}};
  std::vector<OrderSampler> sources = {
      OrderSampler::parametric(Exponential(1), Exponential(2)),
      OrderSampler::bridge(fixtures::canonical_pairs()[2].pair),
  };
  Rng rng = make_rng(kSeed, "acceptance-depth-500");
  double worst = 0.0;
  std::size_t runs = 0;
  for (const auto& src : sources)
    for (int r = 0; r < 20; ++r) {
      auto run = src.draw(500, rng);
      ++runs;
      for (const auto& [x, y] : pairs)
        worst = std::max(worst, std::abs(std::abs(run.f_hat(x) - run.f_hat(y)) - run.d_hat(x, y)));
    }
  ok = ok && worst <= 0.05;
  detail << "depth 500, " << runs << " runs: max ||f(x)-f(y)| - d(x,y)| = " << fmt(worst) << " (limit 0.05)";
  return {ok, detail.str()};
}

// 11
Outcome boundary() {
  const int runs = 100;
  const std::size_t n = 200;
  std::vector<int> good(runs);
  std::vector<double> dist(runs);
  fan_out<int>(
      runs, FanOut{kSeed, "acceptance-boundary", workers(), 1},
      [&](Rng&, std::size_t first, std::size_t) {
        // each run is seeded by its own index
        Rng rng = make_rng(kSeed, "base-chain-run", first);
        auto y = simulate_forward(n, rng).back();
        auto report = convergence_report(WordSequence({y}), CanonicalPair::lebesgue(), 2);
        const auto& s = report.steps.back();
        dist[first] = std::max(s.mu_distance, s.nu_distance);
        good[first] = report.distances_within_tolerance && s.mu_distance < 0.15 && s.nu_distance < 0.15;
        return 0;
      },
      [](int&, int) {});
  int passed = 0;
  double worst = 0.0;
  for (int r = 0; r < runs; ++r) {
    passed += good[r];
    worst = std::max(worst, dist[r]);
  }
  return {passed >= 95, std::to_string(passed) + "/100 runs at N = 200 with both distances < 0.15 (need 95), worst " +
                            fmt(worst)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* title;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"convolution identity, m+n+1 <= 4", convolution},
      {"exp(H) = P, words of length <= 5", exp_h},
      {"Doob-Martin kernel ratio, N(w) <= 4", dm_kernel_ratio},
      {"bridge backward law, N(w) <= 4", bridge_backward},
      {"base-chain uniformity on W_3", base_uniformity},
      {"pattern normalization, m <= 3, five fixtures", pattern_normalization},
      {"harmonicity, fixtures and PL rates", harmonicity},
      {"empirical identity, N(y) <= 6, m <= 2", empirical},
      {"Plackett-Luce law and samplers", plackett_luce},
      {"order statistics: moments and d/f", orders},
      {"boundary diagnostics, base chain N = 200", boundary},
  };
  int failures = 0;
  int index = 0;
  auto total_start = std::chrono::steady_clock::now();
  for (const auto& c : criteria) {
    ++index;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::printf("%s criterion %d: %s | %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", index, c.title, o.detail.c_str(),
                secs);
    std::fflush(stdout);
  }

  auto verify_start = std::chrono::steady_clock::now();
  auto summary = verify_all();
  double verify_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - verify_start).count();
  std::printf("%s verify suite: %zu identities, %zu checks in %.2f s (target 300 s)\n",
              summary.passed() && verify_secs < 300 ? "PASS" : "FAIL", summary.results.size(),
              summary.total_checked(), verify_secs);
  failures += !(summary.passed() && verify_secs < 300);

  double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - total_start).count();
  std::printf("%d of %d checks failed, %.1f s total\n", failures, index + 1, total);
  return failures == 0 ? 0 : 1;
}
