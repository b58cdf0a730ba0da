#pragma once

// Deterministic randomness for experiments: per-sample engine streams and a
// fixed normal-draw algorithm (polar method, no spare caching), so results are
// byte-identical across runs, platforms, and worker counts.

#include <cstdint>
#include <random>

namespace preisach {

[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Independent engine for (seed, stream_index).
[[nodiscard]] inline std::mt19937_64 sample_stream(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(index)));
}

/// Uniform double in [0, 1) from the top 53 bits.
[[nodiscard]] inline double uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

[[nodiscard]] inline double uniform_in(std::mt19937_64& eng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(eng);
}

/// Normal draw via the polar (Marsaglia) method; one fresh pair per draw.
[[nodiscard]] double normal_polar(std::mt19937_64& eng, double mean, double stddev);

inline constexpr const char* kNormalAlgorithm = "polar";

}  // namespace preisach
