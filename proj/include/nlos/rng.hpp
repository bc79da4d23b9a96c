// Seed derivation and a portable Gaussian sampler.
//
// Datasets must be byte-identical for a given seed no matter how work is
// scheduled, so every clip/frame gets its own engine seeded from a hash of
// (root seed, stream ids). std::normal_distribution output is
// implementation-defined, hence the explicit Box-Muller transform.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace nlos {

// splitmix64 finalizer; good avalanche, cheap.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t h = mix64(root ^ 0x4c6f734e314c4f53ULL);
    h = mix64(h ^ a);
    h = mix64(h ^ b);
    h = mix64(h ^ c);
    return h;
}

inline std::mt19937_64 make_engine(std::uint64_t root, std::uint64_t a,
                                   std::uint64_t b = 0, std::uint64_t c = 0) {
    return std::mt19937_64(derive_seed(root, a, b, c));
}

// Uniform double in [0,1) built from the top 53 bits of the engine output.
inline double uniform01(std::mt19937_64& rng) {
    return double(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

// Box-Muller; one value per call, the cosine twin is discarded to keep the
// consumption pattern trivial to reason about.
inline double gaussian(std::mt19937_64& rng) {
    double u1 = uniform01(rng);
    double u2 = uniform01(rng);
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) *
           std::sin(2.0 * 3.14159265358979323846 * u2);
}

// FNV-1a over a byte string; used for scene hashes in dataset manifests.
inline std::uint64_t fnv1a(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 1469598103934665603ULL;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace nlos
