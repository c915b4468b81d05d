#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace oscsum {

// Worker count: OSCSUM_THREADS if set, else hardware concurrency.
inline int thread_count() {
    if (const char* env = std::getenv("OSCSUM_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

// Runs f(i) for i in [0, n).  Each index owns its output slot, so results
// are independent of scheduling; reductions happen on the caller side in
// index order.
template <class F>
void parallel_for(long long n, F&& f) {
    int nt = thread_count();
    if (nt <= 1 || n <= 1) {
        for (long long i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<long long> next{0};
    auto worker = [&] {
        for (;;) {
            long long i = next.fetch_add(1);
            if (i >= n) break;
            f(i);
        }
    };
    std::vector<std::thread> pool;
    int spawn = static_cast<int>(std::min<long long>(nt, n));
    pool.reserve(spawn);
    for (int t = 1; t < spawn; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

}  // namespace oscsum
