#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

// Random number plumbing. The engine is std::mt19937_64 (bit-exact per the
// standard); everything derived from it is hand-rolled here so that streams
// are reproducible across platforms and standard-library versions.
namespace covrt {

using Rng = std::mt19937_64;

// SplitMix64 finalizer (Steele/Lea/Flood), used to hash stream indices.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stream-splitting rule: replication r runs on seed ^ splitmix64(r).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t r) {
    return seed ^ splitmix64(r);
}

// Uniform on [0, 1) using the top 53 bits of one engine word.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform on (0, 1], realized as 1 - U[0,1) to honor left-open intervals.
inline double uniform_open_closed(Rng& rng) {
    return 1.0 - uniform01(rng);
}

// Standard normal via Box-Muller (cosine branch, two uniforms per draw).
inline double normal01(Rng& rng) {
    constexpr double two_pi = 6.283185307179586476925286766559;
    const double u1 = uniform_open_closed(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

// Unbiased integer in [0, n) by rejection sampling. n must be >= 1.
inline std::uint64_t bounded(Rng& rng, std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t threshold = (0ULL - n) % n;  // 2^64 mod n
    for (;;) {
        const std::uint64_t x = rng();
        if (x >= threshold) return x % n;
    }
}

// Fisher-Yates on top of bounded().
template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(bounded(rng, i));
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace covrt
