#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace mfel {

/// Thread budget: MFEL_THREADS if set, hardware concurrency otherwise.
inline unsigned thread_budget() {
  if (const char* env = std::getenv("MFEL_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

/// Index-parallel map with a deterministic result order. Work items must be
/// independent; results are collected by index, so any later reduction is
/// order-independent by construction.
template <class R>
std::vector<R> parallel_map(std::size_t count, const std::function<R(std::size_t)>& f) {
  std::vector<R> results(count);
  unsigned threads = std::min<std::size_t>(thread_budget(), count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = f(i);
    return results;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      try {
        for (std::size_t i = t; i < count; i += threads) results[i] = f(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

}  // namespace mfel
