#pragma once

#include <cstddef>
#include <functional>

namespace ptlab {

// Worker cap shared by every parallel loop. 0 means hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

// Calls body(i) for i in [0, n). Each index is visited once; callers write
// into per-index slots so results never depend on the number of workers.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace ptlab
