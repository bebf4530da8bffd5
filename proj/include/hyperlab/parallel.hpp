#pragma once
// Deterministic block-parallel sweeps: the block decomposition is fixed by
// (lo, hi, block_size) alone, workers pull blocks from an atomic cursor, and
// partial results are returned in block order. Combining partials in that
// order makes every reduction independent of the worker count.

#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>
#include <vector>

#include "hyperlab/arith.hpp"

namespace hyperlab {

using ProgressFn = std::function<void(i64 done_blocks, i64 total_blocks)>;

template <class Partial, class BlockFn>
std::vector<Partial> run_blocked(i64 lo, i64 hi, i64 block_size, int threads, BlockFn fn,
                                 const ProgressFn& progress = {}) {
  if (block_size < 1) throw std::domain_error("run_blocked: block_size must be >= 1");
  if (hi < lo) hi = lo;
  i64 nblocks = (hi - lo + block_size - 1) / block_size;
  std::vector<Partial> out((std::size_t)nblocks);
  if (nblocks == 0) return out;

  std::atomic<i64> cursor{0};
  std::atomic<i64> done{0};
  auto work = [&]() {
    while (true) {
      i64 b = cursor.fetch_add(1);
      if (b >= nblocks) break;
      i64 blo = lo + b * block_size;
      i64 bhi = std::min(hi, blo + block_size);
      out[(std::size_t)b] = fn(blo, bhi);
      i64 d = done.fetch_add(1) + 1;
      if (progress) progress(d, nblocks);
    }
  };

  int nthreads = threads < 1 ? 1 : threads;
  if (nthreads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve((std::size_t)nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return out;
}

}  // namespace hyperlab
