#pragma once

#include <cstddef>
#include <functional>

namespace lltlab {

/// Worker count: LLT_LAB_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

/// Runs body(i) for i in [0, count) on worker_count() threads. Results must be written to
/// per-index slots; the first exception is rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace lltlab
