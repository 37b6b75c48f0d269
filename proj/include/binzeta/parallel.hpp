#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace binzeta {

/// Worker count: BINZETA_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
inline unsigned worker_count() {
    if (const char* env = std::getenv("BINZETA_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (...) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Splits [0, n) into contiguous chunks, runs `body(begin, end)` on each chunk
/// and folds the chunk results in chunk order with `combine`. Chunk boundaries
/// depend only on n and the worker count; with an associative `combine` the
/// result is independent of both.
template <typename T, typename Body, typename Combine>
T parallel_reduce(std::uint64_t n, T init, Body body, Combine combine) {
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(worker_count(), std::max<std::uint64_t>(n, 1)));
    if (workers <= 1) return combine(std::move(init), body(std::uint64_t{0}, n));

    std::vector<T> partial(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    const std::uint64_t step = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t lo = std::min(n, w * step);
        const std::uint64_t hi = std::min(n, lo + step);
        threads.emplace_back([&, w, lo, hi] { partial[w] = body(lo, hi); });
    }
    for (auto& t : threads) t.join();
    for (auto& p : partial) init = combine(std::move(init), std::move(p));
    return init;
}

/// Sum of `body(i)` over [0, n) as 64-bit integers.
template <typename Body>
std::int64_t parallel_sum(std::uint64_t n, Body body) {
    return parallel_reduce<std::int64_t>(
        n, 0,
        [&](std::uint64_t lo, std::uint64_t hi) {
            std::int64_t acc = 0;
            for (std::uint64_t i = lo; i < hi; ++i) acc += body(i);
            return acc;
        },
        [](std::int64_t a, std::int64_t b) { return a + b; });
}

}  // namespace binzeta
