#pragma once

#include <cstddef>
#include <functional>

namespace skinspec {

/// Worker count honoring the SKINSPEC_THREADS cap (unset or invalid: hardware
/// concurrency). Always at least 1.
unsigned default_thread_count();

/// Calls body(i) for i in [0, count). Work is split into contiguous chunks;
/// each index is visited exactly once, so results written per index do not
/// depend on scheduling. threads == 0 means default_thread_count().
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  unsigned threads = 0);

}  // namespace skinspec
