#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace avdiag {

// Seeded RNG used for every sampling decision in the toolkit.
//
// std::mt19937_64 is bit-identical across platforms, but the standard
// <random> distributions are not, so all mappings from raw 64-bit draws
// to ranges live here and nowhere else.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform double in [0, 1) with 53 bits of randomness.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

    // Uniform integer in [0, n). Lemire multiply-shift; bias is < 1/2^64.
    std::uint64_t bounded(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(engine_()) * n) >> 64);
    }

    bool coin() { return (engine_() & 1u) != 0; }

    // In-place Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(bounded(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

// FNV-1a, used to derive stable per-clip seeds from string ids.
inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

// Per-clip seed: mixes the global seed with the clip id so parallel
// per-clip generation never depends on iteration order.
inline std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view clip_id) {
    std::uint64_t z = global_seed ^ fnv1a64(clip_id);
    // splitmix64 finalizer
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace avdiag
