#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace latmax {

// Thread count resolution: explicit argument > LATMAX_THREADS env > hardware.
inline int resolve_threads(int requested = 0) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("LATMAX_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<int>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Deterministic fixed-chunk parallel loop. The index range [0, n) is split
// into chunks of `chunk_size` regardless of thread count, chunk c goes to
// worker c % threads, and fn(chunk_index, begin, end) must write only into
// state owned by that chunk. Results therefore depend on the chunk grid, not
// on scheduling, so runs with different --threads values agree bit for bit
// as long as the caller merges per-chunk state in chunk order.
template <class Fn>
void parallel_chunks(std::int64_t n, int threads, std::int64_t chunk_size, Fn&& fn) {
    if (n <= 0) return;
    if (chunk_size <= 0) throw std::invalid_argument("parallel_chunks: chunk_size must be positive");
    threads = resolve_threads(threads);
    const std::int64_t num_chunks = (n + chunk_size - 1) / chunk_size;
    if (threads == 1 || num_chunks == 1) {
        for (std::int64_t c = 0; c < num_chunks; ++c)
            fn(c, c * chunk_size, std::min(n, (c + 1) * chunk_size));
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            for (std::int64_t c = w; c < num_chunks; c += threads)
                fn(c, c * chunk_size, std::min(n, (c + 1) * chunk_size));
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace latmax
