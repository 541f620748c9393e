#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace skb {

// Process-wide worker count for trial loops. Results never depend on it:
// every parallel loop writes into a preallocated per-index slot and all
// reductions happen sequentially afterwards.
inline int& thread_count() {
    static int count = []() {
        unsigned hw = std::thread::hardware_concurrency();
        return static_cast<int>(std::clamp(hw, 1u, 8u));
    }();
    return count;
}

inline void set_thread_count(int n) { thread_count() = std::max(1, n); }

// Runs fn(i) for i in [0, n). fn must only touch state owned by index i.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const int workers = std::min<std::size_t>(thread_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t i = static_cast<std::size_t>(w); i < n;
                 i += static_cast<std::size_t>(workers)) {
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace skb
