#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rcat {

/// Index-parallel loop over [0, n): fn(i) must be pure or write only to
/// slot i of a pre-sized output. Results are position-addressed, so the
/// outcome does not depend on scheduling. threads = 0 picks the hardware
/// count (capped); threads = 1 runs inline.
template <typename Fn>
void parallel_for(int n, Fn&& fn, unsigned threads = 0) {
    if (n <= 0) return;
    if (threads == 0)
        threads = std::min(8u, std::max(1u, std::thread::hardware_concurrency()));
    threads = std::min<unsigned>(threads, static_cast<unsigned>(n));
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace rcat
