#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace spmac {

/// Thread cap: SPMAC_THREADS if set, else hardware concurrency.
inline int max_threads() {
    if (const char* env = std::getenv("SPMAC_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Runs fn(i) for i in [0, count). Work items must be independent; results
/// should be written to pre-sized slots so the reduction stays deterministic.
inline void parallel_for(long count, const std::function<void(long)>& fn) {
    int threads = std::min<long>(max_threads(), count);
    if (threads <= 1) {
        for (long i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (long i = t; i < count; i += threads) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace spmac
