#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace curate {

// Runs fn(begin, end) over contiguous chunks of [0, n) on `workers` threads.
// Callers write results by index, so the outcome is independent of the
// worker count. The first exception thrown by any chunk is rethrown on the
// calling thread.
inline void parallel_chunks(std::size_t n, unsigned workers,
                            const std::function<void(std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    if (workers <= 1 || n == 1) {
        fn(0, n);
        return;
    }

    const std::size_t thread_count = std::min<std::size_t>(workers, n);
    const std::size_t chunk = (n + thread_count - 1) / thread_count;

    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> threads;
    threads.reserve(thread_count);
    for (std::size_t t = 0; t < thread_count; ++t) {
        std::size_t begin = t * chunk;
        std::size_t end = std::min(begin + chunk, n);
        if (begin >= end) break;
        threads.emplace_back([&, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (std::thread& th : threads) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace curate
