#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace beurlab {

/// Process-wide worker count for parallel loops (0 = hardware concurrency).
void set_thread_count(int n);
int thread_count();

/// Runs fn(i) for i in [0, n). Work items must write to disjoint state;
/// callers reduce afterwards in index order so results are bit-stable
/// regardless of the thread count.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    int workers = thread_count();
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(workers) - 1);
    for (int t = 1; t < workers; ++t) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
}

inline std::atomic<int>& detail_thread_count() {
    static std::atomic<int> count{0};
    return count;
}

inline void set_thread_count(int n) { detail_thread_count().store(n); }

inline int thread_count() {
    int n = detail_thread_count().load();
    if (n > 0) return n;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(hw);
}

}  // namespace beurlab
