#pragma once

#include <cstddef>
#include <functional>

namespace polariton {

// Number of worker threads used by frequency sweeps. 0 means
// std::thread::hardware_concurrency().
void set_thread_count(unsigned count);
unsigned thread_count();

// Runs body(i) for i in [0, count). Work is split into contiguous chunks, one
// per worker; each index is written by exactly one thread so output order is
// independent of scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace polariton
