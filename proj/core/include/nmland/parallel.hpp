#pragma once

#include <cstdint>
#include <functional>

namespace nmland {

// Worker count: explicit argument, else the NMLAND_WORKERS environment
// variable, else hardware concurrency.
int worker_count(int requested = 0);

// Runs fn(i) for i in [begin, end) on a small thread pool. Work items must
// be independent; exceptions are rethrown on the calling thread.
void parallel_for(std::uint64_t begin, std::uint64_t end, int workers,
                  const std::function<void(std::uint64_t)>& fn);

}  // namespace nmland
