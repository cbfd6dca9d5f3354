#pragma once

#include <cstddef>
#include <functional>

namespace elascomplex {

// Worker count: set_thread_count, else ELASCOMPLEX_THREADS, else the hardware count.
std::size_t thread_count();
void set_thread_count(std::size_t n);

// Runs fn(i) for i in [0, n); the first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace elascomplex
