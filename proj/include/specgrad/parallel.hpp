#pragma once

#include <cstddef>
#include <functional>

namespace specgrad {

/// Caps worker threads for parallel_for. 0 restores the default
/// (SPECGRAD_THREADS env var, else hardware concurrency).
void set_thread_cap(int n);

int thread_cap();

/// Runs body(i) for i in [0, n). Bodies must write to disjoint outputs;
/// callers that reduce results do so afterwards in index order, so results
/// never depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace specgrad
