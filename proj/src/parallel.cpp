#include "specgrad/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace specgrad {

namespace {
std::atomic<int> g_cap_override{0};

int default_cap() {
  if (const char* env = std::getenv("SPECGRAD_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}
}  // namespace

void set_thread_cap(int n) { g_cap_override.store(n < 0 ? 0 : n); }

int thread_cap() {
  const int cap = g_cap_override.load();
  return cap > 0 ? cap : default_cap();
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  if (n == 0) return;
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(thread_cap()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }

  std::exception_ptr first_error;
  std::atomic<bool> failed{false};
  auto run_range = [&](std::size_t begin, std::size_t end) {
    try {
      for (std::size_t i = begin; i < end && !failed.load(); ++i) body(i);
    } catch (...) {
      if (!failed.exchange(true)) first_error = std::current_exception();
    }
  };

  std::vector<std::thread> threads;
  threads.reserve(workers - 1);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 1; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    if (begin >= n) break;
    threads.emplace_back(run_range, begin, std::min(begin + chunk, n));
  }
  run_range(0, std::min(chunk, n));
  for (auto& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace specgrad
