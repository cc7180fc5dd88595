#pragma once

#include <cstdint>
#include <random>

namespace ward {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; decorrelates seeds derived from (base, stream).
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    return mix64(mix64(base) ^ (stream * 0xd1b54a32d192ed03ULL));
}

/// Uniform draw in the open interval (0, 1).
inline double uniform_open01(Rng& rng) {
    for (;;) {
        const double u = std::generate_canonical<double, 53>(rng);
        if (u > 0.0) return u;
    }
}

}  // namespace ward
