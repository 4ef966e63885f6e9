#ifndef NKRANK_PARALLEL_HPP
#define NKRANK_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace nkrank {

/// Runs body(begin, end) over `threads` contiguous chunks of [0, count).
/// Callers write results into per-index slots, so output never depends on
/// scheduling. The first exception thrown by any chunk is rethrown.
template <class Body>
void parallel_chunks(std::size_t count, unsigned threads, Body&& body) {
  threads = std::max(1U, threads);
  const std::size_t chunks = std::min<std::size_t>(threads, std::max<std::size_t>(count, 1));
  if (chunks <= 1) {
    body(std::size_t{0}, count);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = count * c / chunks;
    const std::size_t end = count * (c + 1) / chunks;
    pool.emplace_back([&, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

/// SplitMix64 finalizer; derives independent per-chain seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace nkrank

#endif  // NKRANK_PARALLEL_HPP
