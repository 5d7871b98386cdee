#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace zsf {

/// Runs f(unit, worker) for unit in [0, units) on up to `jobs` threads.
/// Units are claimed dynamically; the first exception is rethrown after join.
template <typename F>
void parallel_for(std::size_t units, int jobs, F&& f) {
    const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), 1, std::max<std::size_t>(units, 1));
    if (workers == 1) {
        for (std::size_t u = 0; u < units; ++u) f(u, std::size_t{0});
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&](std::size_t worker) {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t u = next.fetch_add(1);
            if (u >= units) return;
            try {
                f(u, worker);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed = true;
            }
        }
    };
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(body, w);
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace zsf
