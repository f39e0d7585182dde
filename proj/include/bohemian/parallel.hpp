#pragma once

#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace bohemian {

/// Splits [0, total) into `workers` contiguous shards and runs
/// fn(shard_index, begin, end) on each, one thread per shard. Results must
/// be written to per-shard storage; callers merge them in shard order so the
/// outcome is identical to an unsharded run.
template <class Fn>
void parallel_shards(std::uint64_t total, unsigned workers, Fn&& fn) {
    if (workers <= 1 || total == 0) {
        fn(0u, std::uint64_t{0}, total);
        return;
    }
    if (workers > total) workers = static_cast<unsigned>(total);
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
        std::uint64_t begin = total / workers * w + std::min<std::uint64_t>(w, total % workers);
        std::uint64_t len = total / workers + (w < total % workers ? 1 : 0);
        threads.emplace_back([&, w, begin, len] {
            try {
                fn(w, begin, begin + len);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

inline unsigned default_workers() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

}  // namespace bohemian
