#pragma once

#include <cstdint>

namespace bohemian {

/// splitmix64. Fixed-width arithmetic only, so streams are identical on
/// every platform; that is what makes sampled jobs reproducible and
/// shardable by (seed, offset).
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform on [0, n) by Lemire's multiply-shift with rejection; exact.
    std::uint64_t bounded(std::uint64_t n) {
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            std::uint64_t threshold = (0 - n) % n;
            while (lo < threshold) {
                m = static_cast<unsigned __int128>(next()) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

/// Generator for the k-th item of a seeded stream. Mixing the seed with the
/// offset keeps disjoint shards of one stream independent without shared
/// state.
inline SplitMix64 stream_rng(std::uint64_t seed, std::uint64_t offset) {
    SplitMix64 mixer(seed ^ (0xA0761D6478BD642Full + offset * 0xE7037ED1A0B428DBull));
    std::uint64_t s = mixer.next();
    return SplitMix64(s);
}

}  // namespace bohemian
