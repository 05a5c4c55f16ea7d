#include "ttr/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ttr {

namespace {
std::atomic<std::size_t> g_threads{1};
}

void set_num_threads(std::size_t n) { g_threads.store(n == 0 ? 1 : n); }

std::size_t num_threads() { return g_threads.load(); }

void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& fn) {
  if (end <= begin) return;
  const std::size_t count = end - begin;
  const std::size_t workers = std::min(num_threads(), count);
  if (workers <= 1) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
    return;
  }
  // Contiguous blocks per worker; the partition depends only on (count,
  // workers), never on scheduling order.  The first exception thrown by
  // any worker is rethrown on the calling thread once all have joined.
  std::mutex err_mutex;
  std::exception_ptr first_error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t base = count / workers;
  const std::size_t extra = count % workers;
  std::size_t lo = begin;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t len = base + (w < extra ? 1 : 0);
    const std::size_t hi = lo + len;
    pool.emplace_back([lo, hi, &fn, &err_mutex, &first_error, &failed] {
      try {
        for (std::size_t i = lo; i < hi && !failed.load(); ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
      }
    });
    lo = hi;
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace ttr
