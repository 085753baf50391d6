#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace bgk {

inline int thread_count() {
    if (const char* env = std::getenv("BGK_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

/// Chunked parallel loop over [0, n). body must be pure per index; results
/// are deterministic regardless of scheduling.
inline void parallel_for(int n, const std::function<void(int)>& body) {
    int nt = std::min(thread_count(), n > 0 ? n : 1);
    if (nt <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(nt));
    for (int t = 0; t < nt; ++t) {
        pool.emplace_back([=, &body] {
            for (int i = t; i < n; i += nt) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace bgk
