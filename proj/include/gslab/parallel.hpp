#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

namespace gslab {

inline constexpr std::uint64_t kDefaultCap = 100'000'000;
inline constexpr std::uint64_t kSampleBlock = 4096;

// Exact enumeration. Refuses profile spaces larger than `cap`.
struct Exact {
  std::uint64_t cap = kDefaultCap;
  unsigned workers = 1;
};

// Seeded Monte Carlo. Samples are drawn in fixed blocks of kSampleBlock, block b
// using the stream block_rng(seed, b), so estimates do not depend on `workers`.
struct Sampled {
  std::uint64_t samples = 10'000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

// Estimate of a probability with its standard error.
struct Estimate {
  double value = 0.0;
  double stderr_ = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

Estimate bernoulli_estimate(std::uint64_t hits, std::uint64_t samples, std::uint64_t seed);

std::mt19937_64 block_rng(std::uint64_t seed, std::uint64_t block);

// Calls fn(block) for every block in [0, blocks), spread over `workers` threads.
// Callers write into per-block slots and reduce in block order. The first
// exception (by block index) is rethrown after all threads join.
void parallel_blocks(std::size_t blocks, unsigned workers,
                     const std::function<void(std::size_t)>& fn);

// Splits [0, total) into ceil(total / block) blocks and reports [begin, end).
void parallel_ranges(std::uint64_t total, std::uint64_t block, unsigned workers,
                     const std::function<void(std::size_t, std::uint64_t, std::uint64_t)>& fn);

}  // namespace gslab
