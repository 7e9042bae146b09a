#pragma once

#include <cstdint>
#include <random>

namespace greenwifi {

// All randomness in the library goes through mt19937_64 plus the helpers
// below. std::uniform_*_distribution is avoided on purpose: its output is
// implementation-defined, and sweep outputs must be reproducible bit for bit
// from the seeds alone.

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi).
inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform_double(rng);
}

/// Uniform integer in [0, n). Modulo bias is below 2^-32 for the n used here
/// (and zero whenever n divides 2^64, e.g. power-of-two contention windows).
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    return rng() % n;
}

/// splitmix64 finalizer; used to derive independent sub-stream seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    return mix_seed(mix_seed(a) ^ (0x9e3779b97f4a7c15ULL + b));
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return mix_seed(mix_seed(a, b), c);
}

}  // namespace greenwifi
