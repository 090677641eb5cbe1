#ifndef GHZ_PARALLEL_H
#define GHZ_PARALLEL_H

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace ghz {

/// Threads to use for `jobs` independent tasks: GHZ_TELEPORT_THREADS when set
/// to a positive integer, otherwise the hardware concurrency; never more than
/// `jobs` and never less than 1.
int worker_count(size_t jobs);

/// Evaluates f(0..n-1) on worker threads and returns the results in index
/// order. The first exception thrown by any task is rethrown.
template <class T, class F>
std::vector<T> parallel_map(size_t n, F &&f) {
    std::vector<std::optional<T>> slots(n);
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&] {
        for (size_t i = next++; i < n; i = next++) {
            try {
                slots[i].emplace(f(i));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = n;
            }
        }
    };

    int workers = worker_count(n);
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; w++) {
            pool.emplace_back(work);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    std::vector<T> out;
    out.reserve(n);
    for (auto &s : slots) {
        out.push_back(std::move(*s));
    }
    return out;
}

}  // namespace ghz

#endif
