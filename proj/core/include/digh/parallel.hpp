#pragma once

#include <cstddef>
#include <functional>

namespace digh {

// Worker count: DIGH_THREADS if set and positive, else hardware concurrency.
std::size_t thread_count();

// Runs body(i) for i in [0, n). Each index is processed exactly once; callers
// write results into per-index slots so the output does not depend on
// scheduling. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace digh
