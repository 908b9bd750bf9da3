#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bdglab {

// Worker count: BDGLAB_THREADS when set, else the hardware concurrency.
inline unsigned worker_count() {
  if (const char* env = std::getenv("BDGLAB_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(acc, replicate) for replicate = 0..replicates-1. Replicates are
// cut into fixed batches, each filling its own copy of `prototype`; batch
// results are merged in batch order, so the outcome does not depend on the
// number of workers. Acc must provide merge(const Acc&).
template <class Acc, class Body>
Acc run_replicates(std::size_t replicates, const Acc& prototype, Body body, std::size_t batch_size = 512) {
  const std::size_t batches = (replicates + batch_size - 1) / batch_size;
  std::vector<Acc> partial(batches, prototype);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const auto worker = [&] {
    while (true) {
      const std::size_t b = next.fetch_add(1);
      if (b >= batches) return;
      try {
        const std::size_t last = std::min(replicates, (b + 1) * batch_size);
        for (std::size_t r = b * batch_size; r < last; ++r) body(partial[b], r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(batches);
        return;
      }
    }
  };

  const unsigned threads = std::min<std::size_t>(worker_count(), std::max<std::size_t>(batches, 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  Acc total = prototype;
  for (const auto& p : partial) total.merge(p);
  return total;
}

}  // namespace bdglab
