#ifndef MORIN_PARALLEL_HPP
#define MORIN_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace morin
{

// Worker count: MORIN_CENSUS_THREADS if set to a positive integer, else hardware concurrency.
inline unsigned worker_threads()
{
    if (const char *env = std::getenv("MORIN_CENSUS_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) {
                return unsigned(v);
            }
        } catch (const std::exception &) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(i) for i in [0, count) on up to `threads` workers. Each index is independent;
// the first exception is rethrown after all workers have joined.
inline void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)> &body)
{
    threads = std::max(1u, std::min<unsigned>(threads, unsigned(std::max<std::size_t>(count, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) {
                        error = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto &th : pool) {
        th.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

} // namespace morin

#endif
