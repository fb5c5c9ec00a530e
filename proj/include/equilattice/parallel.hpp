#pragma once

// Deterministic fork-join helper. Work is split into a fixed number of
// chunks independent of the thread count, and partial results are merged
// in chunk order, so results do not depend on --threads.

#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace eql {

inline int& global_thread_count() {
    static int n = static_cast<int>(std::thread::hardware_concurrency());
    return n;
}

// Splits [0, n) into n_chunks contiguous ranges; body(chunk_id, begin, end)
// fills its own slot. Chunks are merged by the caller in index order.
template <class Body>
void parallel_chunks(long long n, int n_chunks, Body body) {
    if (n <= 0) return;
    if (n_chunks > n) n_chunks = static_cast<int>(n);
    int threads = std::max(1, global_thread_count());
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            int c = next.fetch_add(1);
            if (c >= n_chunks) return;
            long long b = n * c / n_chunks;
            long long e = n * (c + 1) / n_chunks;
            body(c, b, e);
        }
    };
    if (threads == 1) {
        worker();
        return;
    }
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace eql
