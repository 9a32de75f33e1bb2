#include "gslab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>
#include <vector>

namespace gslab {

Estimate bernoulli_estimate(std::uint64_t hits, std::uint64_t samples, std::uint64_t seed) {
  Estimate e;
  e.samples = samples;
  e.seed = seed;
  if (samples == 0) return e;
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  e.value = p;
  e.stderr_ = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  return e;
}

std::mt19937_64 block_rng(std::uint64_t seed, std::uint64_t block) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32),
                    0x67736c61u};
  return std::mt19937_64(seq);
}

void parallel_blocks(std::size_t blocks, unsigned workers,
                     const std::function<void(std::size_t)>& fn) {
  if (blocks == 0) return;
  workers = std::max(1u, workers);
  if (workers == 1 || blocks == 1) {
    for (std::size_t b = 0; b < blocks; ++b) fn(b);
    return;
  }
  std::vector<std::exception_ptr> errors(blocks);
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= blocks) return;
      try {
        fn(b);
      } catch (...) {
        errors[b] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned n = static_cast<unsigned>(std::min<std::size_t>(workers, blocks));
  pool.reserve(n);
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

void parallel_ranges(std::uint64_t total, std::uint64_t block, unsigned workers,
                     const std::function<void(std::size_t, std::uint64_t, std::uint64_t)>& fn) {
  if (total == 0) return;
  block = std::max<std::uint64_t>(1, block);
  const std::size_t blocks = static_cast<std::size_t>((total + block - 1) / block);
  parallel_blocks(blocks, workers, [&](std::size_t b) {
    const std::uint64_t begin = static_cast<std::uint64_t>(b) * block;
    fn(b, begin, std::min(total, begin + block));
  });
}

}  // namespace gslab
