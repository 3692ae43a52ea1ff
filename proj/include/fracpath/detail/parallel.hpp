#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fracpath {

namespace detail {
inline std::atomic<int>& thread_setting() {
    static std::atomic<int> value{[] {
        if (const char* env = std::getenv("FRACPATH_THREADS")) {
            const int v = std::atoi(env);
            if (v > 0) return v;
        }
        return 1;
    }()};
    return value;
}
}  // namespace detail

inline int thread_count() { return detail::thread_setting().load(); }
inline void set_thread_count(int k) { detail::thread_setting().store(std::max(1, k)); }

// Runs f(i) for i in [0, n). Work is handed out in fixed chunks; every index is computed
// independently, so results never depend on the thread count.
template <class F>
void parallel_for(std::size_t n, F&& f, std::size_t grain = 16) {
    const int threads = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), (n + grain - 1) / std::max<std::size_t>(grain, 1));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    auto worker = [&] {
        try {
            for (;;) {
                const std::size_t begin = next.fetch_add(grain);
                if (begin >= n) break;
                const std::size_t end = std::min(n, begin + grain);
                for (std::size_t i = begin; i < end; ++i) f(i);
            }
        } catch (...) {
            std::lock_guard<std::mutex> g(failure_lock);
            if (!failure) failure = std::current_exception();
            next.store(n);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads - 1));
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

// Sum of f(i) with fixed 256-wide blocks combined in index order.
template <class F>
double parallel_sum(std::size_t n, F&& f) {
    constexpr std::size_t block = 256;
    const std::size_t blocks = (n + block - 1) / block;
    std::vector<double> partial(blocks, 0.0);
    parallel_for(
        blocks,
        [&](std::size_t b) {
            double s = 0.0;
            const std::size_t end = std::min(n, (b + 1) * block);
            for (std::size_t i = b * block; i < end; ++i) s += f(i);
            partial[b] = s;
        },
        1);
    double s = 0.0;
    for (double v : partial) s += v;
    return s;
}

}  // namespace fracpath
