#pragma once

/**
 * @file random.hpp
 * @brief Counter-based SplitMix64 streams.
 *
 * Every random draw is a pure function of (seed, stream, index), so a
 * sample's value depends only on its own index and never on how work was
 * split between threads. The mixer is SplitMix64 (Steele, Lea, Flood 2014)
 * with its published constants.
 */

#include <cstdint>

#include "mcf/rational.hpp"

namespace mcf {

inline constexpr std::uint64_t splitmix_gamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Sequential SplitMix64 generator.
class SplitMix64 {
    std::uint64_t state_;

public:
    explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

    constexpr std::uint64_t next() {
        state_ += splitmix_gamma;
        return splitmix64_mix(state_);
    }

    /// Uniform in [0, bound) by rejection; bound > 0.
    constexpr std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t v;
        do v = next(); while (v >= limit);
        return v % bound;
    }
};

/// Generator for sample `index` of stream `stream` under `seed`.
constexpr SplitMix64 substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    const std::uint64_t key = splitmix64_mix(seed + splitmix_gamma * (stream + 1));
    return SplitMix64(splitmix64_mix(key ^ (splitmix_gamma * (index + 1))));
}

/// Uniform dyadic k / 2^64 with k in [1, 2^64), so the result is in (0, 1).
inline Rational uniform_unit_dyadic(SplitMix64& rng) {
    std::uint64_t k;
    do k = rng.next(); while (k == 0);
    BigInt num;
    mpz_import(num.get_mpz_t(), 1, 1, sizeof(k), 0, 0, &k);
    return Rational(num) * pow2(-64);
}

}  // namespace mcf
