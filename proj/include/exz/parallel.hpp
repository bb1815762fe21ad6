#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

#include "exz/numerics/real.hpp"

namespace exz {

/// Process-wide cap on worker threads (CLI --threads). Never affects results.
unsigned max_threads() noexcept;
void set_max_threads(unsigned n) noexcept;

/// Runs body(chunk) for every chunk in [0, n_chunks). Chunks are the unit of
/// determinism: callers size them independently of the thread count and write
/// results into per-chunk slots. Workers inherit the caller's working precision.
/// The exception from the lowest failing chunk is rethrown.
template <class Body>
void parallel_chunks(std::size_t n_chunks, Body&& body, unsigned threads = 0) {
  if (threads == 0) threads = max_threads();
  if (threads > n_chunks) threads = static_cast<unsigned>(n_chunks);
  if (threads <= 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) body(c);
    return;
  }
  const long bits = working_precision();
  std::vector<std::exception_ptr> errors(n_chunks);
  auto worker = [&](unsigned w) {
    ScopedPrecision guard(bits);
    for (std::size_t c = w; c < n_chunks; c += threads) {
      try {
        body(c);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  for (unsigned w = 1; w < threads; ++w) pool.emplace_back(worker, w);
  worker(0);
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// Splits [0, n) into fixed blocks of `block` items: chunk c covers [c*block, min(n,(c+1)*block)).
inline std::size_t chunk_count(std::size_t n, std::size_t block) { return (n + block - 1) / block; }

}  // namespace exz
