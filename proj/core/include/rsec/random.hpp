#pragma once

#include <cstdint>
#include <random>

namespace rsec {

// mt19937_64 output is fully specified by the standard; the distributions are
// not, so the helpers below convert raw bits by hand to keep runs bit-identical
// across standard libraries.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in the open interval (0, 1).
inline double uniform_open01(Rng& rng) {
    double t = 0.0;
    while (t == 0.0) t = uniform01(rng);
    return t;
}

/// Independent, reproducible sub-stream seed (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace rsec
