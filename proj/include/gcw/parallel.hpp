#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gcw {

// Runs body(i) for i in [0, count) on up to `threads` workers. Work items are
// handed out dynamically; callers write results by index so the outcome does
// not depend on scheduling. The first exception thrown is rethrown.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body)
{
    const unsigned workers = static_cast<unsigned>(
        std::min<std::size_t>(std::max(1u, threads), count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next = count;
                }
            }
        });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

} // namespace gcw
