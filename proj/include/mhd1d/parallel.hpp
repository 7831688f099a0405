#pragma once

#include <cstddef>
#include <functional>

namespace mhd1d {

/// Worker cap: MHD1D_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1). Throws ConfigError for a malformed value.
unsigned thread_cap();

/// Calls task(i) for i in [0, count) on up to thread_cap() threads. Tasks
/// must not share mutable state. The first exception (by index) is rethrown
/// after all workers have finished.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task);

}  // namespace mhd1d
