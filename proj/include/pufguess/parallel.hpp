#pragma once

#include <cstddef>
#include <functional>

namespace pufguess {

/// Caps the number of worker threads used by the library. 0 means "use the
/// hardware concurrency". Results never depend on this value.
void set_thread_limit(unsigned threads) noexcept;
unsigned thread_limit() noexcept;

/// Calls body(begin, end) on disjoint contiguous chunks covering [0, count).
/// Chunks may run concurrently; the first exception thrown is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace pufguess
