#pragma once

#include <atomic>
#include <thread>
#include <vector>

namespace fpe {

/// Runs fn(0..n-1) across up to `jobs` workers. fn(i) must write only
/// to slot i of any shared output, which keeps results identical for
/// every job count.
template <class F>
void parallel_for(size_t n, unsigned jobs, F&& fn) {
    if (jobs <= 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    unsigned workers = std::min<size_t>(jobs, n);
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            size_t i;
            while (!failed.load(std::memory_order_relaxed) &&
                   (i = next.fetch_add(1)) < n) {
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace fpe
