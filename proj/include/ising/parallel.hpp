#pragma once

#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace ising {

/// Thread count resolution: an explicit request wins; otherwise the
/// ISING_THREADS environment variable; otherwise the hardware concurrency
/// (at least 1).
inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("ISING_THREADS")) {
        try {
            int v = std::stoi(env);
            if (v > 0) return v;
        } catch (...) {
            // fall through to hardware count
        }
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Runs body(i) for i in [0, count) on up to n_threads threads, in contiguous
/// chunks. Each index must write only to its own output slot so results are
/// identical for every thread count. Exceptions from workers are rethrown on
/// the calling thread (the first one, by index order).
inline void parallel_for(std::size_t count, int n_threads,
                         const std::function<void(std::size_t)>& body) {
    n_threads = resolve_threads(n_threads);
    if (n_threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::size_t workers = std::min<std::size_t>(n_threads, count);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk;
        std::size_t hi = std::min(count, lo + chunk);
        pool.emplace_back([&, lo, hi, w] {
            try {
                for (std::size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace ising
