#pragma once

// Monte Carlo replica fan-out. Trials are cut into fixed-size blocks, each
// block draws from its own label-derived stream, and block results are merged
// in block order, so the output does not depend on the worker count.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "wordchain/random.hpp"

namespace wordchain {

inline constexpr std::size_t kReplicaBlock = 4096;

struct FanOut {
  std::uint64_t seed = 0;
  std::string label;
  unsigned jobs = 1;
  std::size_t block = kReplicaBlock;
};

/// block_fn(Rng&, first_trial, count) -> Result; merge(Result&, const Result&).
template <typename Result, typename BlockFn, typename Merge>
Result fan_out(std::size_t trials, const FanOut& cfg, BlockFn block_fn, Merge merge) {
  const std::size_t block = std::max<std::size_t>(cfg.block, 1);
  const std::size_t blocks = (trials + block - 1) / block;
  std::vector<std::optional<Result>> results(blocks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};

  auto worker = [&] {
    for (;;) {
      std::size_t b = next.fetch_add(1);
      if (b >= blocks || failed.load()) return;
      try {
        Rng rng = make_rng(cfg.seed, cfg.label, b);
        std::size_t first = b * block;
        results[b].emplace(block_fn(rng, first, std::min(block, trials - first)));
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };

  const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(std::max<std::size_t>(blocks, 1))));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  Result total{};
  for (auto& r : results) merge(total, *r);
  return total;
}

}  // namespace wordchain
