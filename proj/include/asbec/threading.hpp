#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace asbec {

// ASBEC_THREADS, when set to a positive integer, caps every thread pool in
// the process (benchmark scheduler and bee-by-bee wave evaluation).
inline std::optional<int> configured_threads() {
    const char* raw = std::getenv("ASBEC_THREADS");
    if (raw == nullptr || *raw == '\0') return std::nullopt;
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || v < 1) return std::nullopt;
    return static_cast<int>(std::min(v, 256L));
}

inline int hardware_threads() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

inline int thread_cap() {
    if (auto t = configured_threads()) return *t;
    return hardware_threads();
}

// Runs chunk(lo, hi) over a partition of [0, n) on `workers` threads.
// Falls back to a plain loop for workers <= 1.
inline void parallel_for(long n, int workers,
                         const std::function<void(long, long)>& chunk) {
    if (n <= 0) return;
    workers = static_cast<int>(std::min<long>(workers, n));
    if (workers <= 1) {
        chunk(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const long step = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const long lo = static_cast<long>(w) * step;
        const long hi = std::min(n, lo + step);
        if (lo >= hi) break;
        pool.emplace_back([&chunk, lo, hi] { chunk(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace asbec
