#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace freeprod {

namespace detail {

// Runs fn(t) for t in [0, trials) on up to `threads` workers.
template <class Fn>
void for_each_trial(int trials, int threads, Fn fn) {
  if (threads <= 1 || trials <= 1) {
    for (int t = 0; t < trials; ++t) fn(t);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int k = 0; k < std::min(threads, trials); ++k) {
    pool.emplace_back([&] {
      for (int t = next++; t < trials; t = next++) {
        try {
          fn(t);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

}  // namespace freeprod
