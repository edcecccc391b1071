#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace wglab {

// Process-wide worker count used by the data-parallel loops. 0 means
// std::thread::hardware_concurrency().
void set_thread_count(unsigned n) noexcept;
unsigned thread_count() noexcept;

// Runs body(begin, end) over fixed-size chunks of [0, n). Chunk boundaries
// depend only on n and chunk, never on the thread count, so any per-chunk
// result stored by index reduces identically regardless of scheduling.
void parallel_chunks(std::size_t n, std::size_t chunk,
                     const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace wglab
