#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace holeprobe {

/// Worker count to use when the caller asks for `requested` (0 = automatic).
/// Automatic resolves to HOLEPROBE_WORKERS if set, else hardware concurrency.
/// HOLEPROBE_WORKERS also caps explicit requests.
unsigned resolve_workers(unsigned requested);

/// Runs body(i) for i in [0, count) on up to `workers` threads. Jobs are handed
/// out one index at a time; the first exception thrown is rethrown here after
/// all threads have joined.
template <class Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
  const unsigned threads =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, resolve_workers(workers)), count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
      }
    }
  };

  std::vector<std::jthread> pool;
  pool.reserve(threads - 1);
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(run);
  run();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace holeprobe
