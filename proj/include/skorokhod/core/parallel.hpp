#pragma once

#include <cstddef>
#include <functional>

namespace skorokhod {

/// Worker count from SKOROKHOD_KIT_THREADS, else hardware concurrency (>= 1).
std::size_t default_thread_count();

/// Calls body(i) for i in [0, n) on up to `threads` workers in contiguous
/// blocks. Rethrows the first exception raised by any call. Results written
/// to per-index slots are independent of the worker count.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& body);

}  // namespace skorokhod
