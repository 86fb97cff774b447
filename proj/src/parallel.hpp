#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace habitat {

/// Runs body(begin, end) over a static block partition of [0, n) on up to
/// n_threads workers. Callers must write results to disjoint, preallocated
/// slots; the partition depends only on (n, n_threads), so output is
/// independent of scheduling. The first exception thrown by any worker is
/// rethrown on the calling thread.
template <typename Body>
void parallel_for(std::size_t n, int n_threads, Body&& body) {
    if (n == 0) return;
    const std::size_t workers =
        n_threads <= 1 ? 1 : std::min<std::size_t>(static_cast<std::size_t>(n_threads), n);
    if (workers == 1) {
        body(std::size_t{0}, n);
        return;
    }

    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) {
        const std::size_t begin = n * t / workers;
        const std::size_t end = n * (t + 1) / workers;
        pool.emplace_back([&, begin, end] {
            try {
                body(begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& worker : pool) worker.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace habitat
