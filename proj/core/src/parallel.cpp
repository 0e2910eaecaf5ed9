#include "nmland/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace nmland {

int worker_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("NMLAND_WORKERS")) {
        const int parsed = std::atoi(env);
        if (parsed > 0) return parsed;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(std::uint64_t begin, std::uint64_t end, int workers,
                  const std::function<void(std::uint64_t)>& fn) {
    if (begin >= end) return;
    workers = worker_count(workers);
    const std::uint64_t span = end - begin;
    if (workers <= 1 || span == 1) {
        for (std::uint64_t i = begin; i < end; ++i) fn(i);
        return;
    }
    std::atomic<std::uint64_t> next(begin);
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&]() {
        while (true) {
            const std::uint64_t i = next.fetch_add(1);
            if (i >= end) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const int count = static_cast<int>(std::min<std::uint64_t>(workers, span));
    pool.reserve(count);
    for (int w = 0; w < count; ++w) pool.emplace_back(run);
    for (std::thread& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace nmland
