#ifndef MOMENT8_PARALLEL_HPP
#define MOMENT8_PARALLEL_HPP

// Deterministic work splitting: a fixed chunk grid independent of the
// thread count, so reductions combined in chunk order give byte-identical
// results for any --threads value.

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace moment8 {

inline unsigned default_threads() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

// Runs fn(chunk_index) for chunk_index in [0, n_chunks) on up to n_threads
// workers. fn must only touch chunk-local state.
inline void parallel_chunks(std::size_t n_chunks, unsigned n_threads,
                            const std::function<void(std::size_t)>& fn) {
    if (n_chunks == 0) return;
    if (n_threads <= 1 || n_chunks == 1) {
        for (std::size_t i = 0; i < n_chunks; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n_chunks) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    unsigned n = std::min<unsigned>(n_threads, static_cast<unsigned>(n_chunks));
    pool.reserve(n);
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace moment8

#endif
