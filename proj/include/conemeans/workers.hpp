#pragma once

#include <cstddef>
#include <functional>

namespace conemeans {

/// CONEMEANS_WORKERS if set, else the hardware concurrency (at least 1).
std::size_t worker_count();

/// Calls f(i) for i in [0, n) on up to worker_count() threads, in contiguous
/// chunks. The first exception thrown (lowest index) is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

}  // namespace conemeans
