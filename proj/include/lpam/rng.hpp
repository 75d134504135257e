#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <thread>
#include <vector>

namespace lpam {

// Deterministic RNG wrapper. A master seed plus a stream index derive an
// independent stream; replicate r of an experiment always uses
// Rng(derive_stream(master, r)), so results do not depend on thread count.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t u64() { return engine_(); }

    // Uniform in [0, n), n >= 1. Rejection sampling keeps the draw unbiased.
    uint64_t below(uint64_t n) {
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    size_t index(size_t n) { return static_cast<size_t>(below(n)); }

    // Uniform in [0, 1) with 53 random bits.
    double real01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1], safe as a log argument.
    double real01_open_zero() { return 1.0 - real01(); }

    double exponential(double rate) { return -std::log(real01_open_zero()) / rate; }

private:
    std::mt19937_64 engine_;
};

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline uint64_t derive_stream(uint64_t master_seed, uint64_t stream_index) {
    return splitmix64(splitmix64(master_seed) ^ splitmix64(stream_index + 0x51ed270b7a4aa4ULL));
}

// Runs fn(i) for i in [0, count) on up to `threads` workers. Work is
// partitioned by index, so any per-index output written to preallocated
// slots is identical regardless of the thread count.
inline void parallel_for_index(size_t count, int threads, const std::function<void(size_t)>& fn) {
    if (threads <= 1 || count <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const size_t nthreads = std::min<size_t>(threads, count);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (size_t t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t] {
            for (size_t i = t; i < count; i += nthreads) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

inline int default_thread_count() {
    if (const char* env = std::getenv("LPAM_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace lpam
