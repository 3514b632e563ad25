#pragma once

#include <cstdint>
#include <random>

namespace blotto::detail {

// Uniform in [0,1). Hand-rolled instead of std::uniform_real_distribution so
// output streams are identical across standard library implementations (the
// CLI promises byte-reproducible output for a fixed seed).
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

// splitmix64: derives independent substream seeds from (seed, index).
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t x = seed + 0x9E3779B97F4A7C15ull * (index + 1);
    x ^= x >> 30; x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27; x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

}  // namespace blotto::detail
