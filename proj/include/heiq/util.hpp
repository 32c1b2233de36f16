#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace heiq {

/// Deterministic RNG used wherever an operation is documented as "seeded".
using Rng = std::mt19937_64;

constexpr std::uint64_t kDefaultSeed = 0x5eed5eed5eed5eedULL;

inline std::int64_t rand_below(Rng& rng, std::int64_t n) {
    std::uniform_int_distribution<std::int64_t> dist(0, n - 1);
    return dist(rng);
}

/// Worker count: HEIQ_WORKERS env var overrides hardware concurrency.
inline unsigned worker_count() {
    if (const char* env = std::getenv("HEIQ_WORKERS")) {
        long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<unsigned>(n);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

/// Splits [0, n) into contiguous chunks and runs fn(begin, end, chunk_index)
/// on each, using at most worker_count() threads. Results must be merged by
/// the caller in chunk order to stay deterministic.
inline void parallel_chunks(std::size_t n,
                            const std::function<void(std::size_t, std::size_t, unsigned)>& fn) {
    unsigned workers = worker_count();
    if (workers <= 1 || n < 2) {
        fn(0, n, 0);
        return;
    }
    if (workers > n) workers = static_cast<unsigned>(n);
    std::vector<std::thread> threads;
    std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        threads.emplace_back([=] { fn(lo, hi, w); });
    }
    for (auto& t : threads) t.join();
}

}  // namespace heiq
