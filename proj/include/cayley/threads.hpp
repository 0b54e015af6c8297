#pragma once
// Minimal task-pool helper.  Callers chunk their work into indexed tasks
// and merge per-task results by index, so the outcome is independent of
// the schedule.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cayley {

inline unsigned thread_count(unsigned requested = 0) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

template <class Fn>
void parallel_tasks(std::size_t n_tasks, unsigned threads, Fn&& fn) {
  unsigned nt = static_cast<unsigned>(std::min<std::size_t>(thread_count(threads), n_tasks));
  if (nt <= 1) {
    for (std::size_t i = 0; i < n_tasks; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n_tasks) return;
      try {
        fn(i);
      } catch (...) {
        {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!err) err = std::current_exception();
        }
        next.store(n_tasks);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace cayley
