#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace dyntda {

// Runs fn(i) for i in [0, n_jobs) on up to n_threads workers. Each job must
// write only to its own output slot; results are then identical for any
// thread count, which the pipeline relies on for reproducibility.
template <typename Fn>
void parallel_for(std::size_t n_jobs, int n_threads, Fn&& fn) {
    if (n_threads <= 1 || n_jobs <= 1) {
        for (std::size_t i = 0; i < n_jobs; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::atomic<int> error_claim{0};

    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n_jobs || failed.load(std::memory_order_relaxed)) return;
            try {
                fn(i);
            } catch (...) {
                if (error_claim.exchange(1) == 0) first_error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };

    std::size_t workers = static_cast<std::size_t>(n_threads);
    if (workers > n_jobs) workers = n_jobs;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace dyntda
