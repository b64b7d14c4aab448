#pragma once

// Prefix sums over n = 1..N at a set of checkpoints, computed block-parallel
// with a reduction order that depends only on the fixed block size. The
// result is bit-identical for any number of worker threads.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <utility>
#include <vector>

#include "mvlab/compensated.hpp"
#include "mvlab/mfunc.hpp"

namespace mvlab::detail {

inline constexpr std::uint64_t kSumBlock = std::uint64_t{1} << 16;

struct PairSum {
  CompensatedComplexSum first;
  CompensatedComplexSum second;

  void merge(const PairSum& other) {
    first.merge(other.first);
    second.merge(other.second);
  }
};

unsigned worker_count(std::size_t tasks);

/// Runs body(b) for b in [0, blocks) on a small thread pool. Bodies must
/// write only to per-block state.
template <typename Body>
void for_each_block(std::size_t blocks, const Body& body) {
  const unsigned workers = worker_count(blocks);
  if (workers <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) body(b);
    return;
  }
  std::atomic<std::size_t> cursor{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t b = cursor++; b < blocks; b = cursor++) body(b);
    });
  }
  for (auto& t : pool) t.join();
}

/// `ends` ascending. term(n) returns the pair of complex addends for n.
/// Returns the pair of prefix sums through each end (0 for end == 0).
template <typename Term>
std::vector<std::pair<Complex, Complex>> ordered_prefix_sums(const std::vector<std::uint64_t>& ends,
                                                             const Term& term) {
  std::vector<std::pair<Complex, Complex>> out(ends.size());
  if (ends.empty() || ends.back() == 0) return out;
  const std::uint64_t top = ends.back();
  const std::size_t blocks = static_cast<std::size_t>((top + kSumBlock - 1) / kSumBlock);

  struct BlockResult {
    PairSum total;
    std::vector<std::pair<std::size_t, PairSum>> marks;  // checkpoint index, in-block partial
  };
  std::vector<BlockResult> results(blocks);

  auto run_block = [&](std::size_t b) {
    const std::uint64_t lo = b * kSumBlock + 1;
    const std::uint64_t hi = std::min(top, (b + 1) * kSumBlock);
    auto next = static_cast<std::size_t>(
        std::lower_bound(ends.begin(), ends.end(), lo) - ends.begin());
    BlockResult& r = results[b];
    for (std::uint64_t n = lo; n <= hi; ++n) {
      const auto [a, c] = term(n);
      r.total.first.add(a);
      r.total.second.add(c);
      while (next < ends.size() && ends[next] == n) r.marks.emplace_back(next++, r.total);
    }
  };

  for_each_block(blocks, run_block);

  PairSum running;
  for (const BlockResult& r : results) {
    for (const auto& [index, partial] : r.marks) {
      PairSum at = running;
      at.merge(partial);
      out[index] = {at.first.value(), at.second.value()};
    }
    running.merge(r.total);
  }
  return out;
}

}  // namespace mvlab::detail
