#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

namespace normtrace {

/// Runs fn(chunk) for every chunk in [0, chunk_count) on up to `workers`
/// threads. Chunks are the unit of determinism: callers store per-chunk
/// results and merge them in chunk order, so the worker count never changes
/// the output.
template <class Fn>
void for_each_chunk(std::size_t chunk_count, unsigned workers, Fn&& fn) {
  workers = std::max(1u, workers);
  if (workers == 1 || chunk_count <= 1) {
    for (std::size_t c = 0; c < chunk_count; ++c) fn(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= chunk_count) return;
      try {
        fn(c);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(chunk_count);
      }
    }
  };
  std::vector<std::jthread> pool;
  const unsigned n = static_cast<unsigned>(std::min<std::size_t>(workers, chunk_count));
  for (unsigned i = 0; i < n; ++i) pool.emplace_back(body);
  pool.clear();
  if (error) std::rethrow_exception(error);
}

struct ChunkRange {
  std::uint64_t begin;
  std::uint64_t end;
};

/// Splits [0, total) into chunks of at most `chunk_size` items.
inline std::size_t chunk_count_for(std::uint64_t total, std::uint64_t chunk_size) {
  return static_cast<std::size_t>((total + chunk_size - 1) / chunk_size);
}

inline ChunkRange chunk_range(std::uint64_t total, std::uint64_t chunk_size, std::size_t chunk) {
  const std::uint64_t begin = chunk * chunk_size;
  return {begin, std::min(total, begin + chunk_size)};
}

/// Generator for one chunk of a seeded sampled run.
inline std::mt19937_64 chunk_rng(std::uint64_t seed, std::size_t chunk) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace normtrace
