#pragma once

#include <functional>

namespace hindep {

// Worker count used when a config asks for 0 threads: the HINDEP_THREADS
// environment variable if set, otherwise the hardware concurrency.
int default_threads();

// Runs fn(i) for i in [begin, end) across `threads` workers. Work items must
// write to disjoint output slots; index assignment is static, so any result
// assembled by index is identical for every thread count.
void parallel_for(int begin, int end, int threads, const std::function<void(int)>& fn);

}  // namespace hindep
