// parallel.hpp — Chunked parallel loop over independent indices.

#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace dicke3::run {

// Worker count: DICKE3_THREADS overrides hardware concurrency.
inline int thread_count() {
    if (const char* env = std::getenv("DICKE3_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

// f(i) must be independent across i; results must go to preassigned slots so
// the output cannot depend on the partitioning.
template <typename F>
void parallel_for(int n, F&& f) {
    const int workers = std::min(thread_count(), n > 0 ? n : 1);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (int i = w; i < n; i += workers) f(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace dicke3::run
