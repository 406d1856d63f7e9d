#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace razak {

/// Worker count from RAZAK_WORKERS, else the hardware concurrency (at least 1).
std::size_t worker_count();

/// Runs body(i) for i in [0, count) over the worker pool. Iterations must be
/// independent; the first exception thrown by any worker is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace razak
