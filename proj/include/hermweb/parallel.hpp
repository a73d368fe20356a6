#pragma once

#include <cstddef>
#include <functional>

namespace hermweb {

/// Data-parallel width: HERMWEB_THREADS if set (>= 1), otherwise the hardware concurrency.
unsigned thread_count();

/// Runs body(i) for i in [0, count). Iterations must be independent; small
/// loops run on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace hermweb
