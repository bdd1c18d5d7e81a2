#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace seqexp {

/// Requested worker count, capped by the SEQEXP_THREADS environment variable.
/// Zero or negative requests mean "hardware concurrency".
inline int resolve_threads(int requested) {
    int n = requested > 0 ? requested : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* cap = std::getenv("SEQEXP_THREADS")) {
        try {
            const int c = std::stoi(cap);
            if (c > 0) n = std::min(n, c);
        } catch (...) {
        }
    }
    return std::max(1, n);
}

/// Calls fn(j) for every j in [lo, hi), split into contiguous blocks. Each j is
/// handled by exactly one worker, so pure gathers give identical results for
/// any thread count.
template <class F>
void parallel_rows(int lo, int hi, int threads, F&& fn) {
    const int n = hi - lo;
    threads = std::clamp(threads, 1, std::max(1, n));
    if (threads == 1) {
        for (int j = lo; j < hi; ++j) fn(j);
        return;
    }
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        const int a = lo + static_cast<int>(static_cast<long>(n) * t / threads);
        const int b = lo + static_cast<int>(static_cast<long>(n) * (t + 1) / threads);
        pool.emplace_back([a, b, &fn] {
            for (int j = a; j < b; ++j) fn(j);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace seqexp
