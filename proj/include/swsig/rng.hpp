#pragma once

#include <cstdint>
#include <limits>
#include <random>

#include "swsig/error.hpp"

namespace swsig {

/// Seed for every randomized operation in the library.  The same seed on the
/// same inputs reproduces the identical draw sequence on any platform.
using RngSeed = std::uint64_t;

/// SplitMix64 finalizer; used to derive stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Deterministic, order-sensitive combination of a seed with a stream tag or
/// index: seed_mix(seed_mix(master, tag), i) names one independent substream.
constexpr std::uint64_t seed_mix(std::uint64_t a, std::uint64_t b) {
    return splitmix64(a ^ (0x9e3779b97f4a7c15ull + splitmix64(b)));
}

/// Seedable 64-bit generator with portable output.
///
/// The engine is std::mt19937_64, whose output sequence is fully specified by
/// the C++ standard.  The standard library's *distributions* are not, so the
/// mappings below are implemented here:
///   - uniform_index(n): rejection sampling, no modulo bias;
///   - uniform_unit(): 53-bit mantissa in [0,1); uniform_unit_oc(): (0,1];
///   - gaussian(): Box-Muller on the above.
class Rng {
public:
    explicit Rng(RngSeed seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, n).  Rejects the partial top interval of the
    /// 64-bit range so every residue is equally likely.
    std::uint64_t uniform_index(std::uint64_t n) {
        if (n == 0) {
            throw ConfigError("uniform_index: empty range");
        }
        const std::uint64_t threshold = (0 - n) % n; // == 2^64 mod n
        std::uint64_t x = next_u64();
        while (x < threshold) {
            x = next_u64();
        }
        return x % n;
    }

    /// Uniform integer in [lo, hi], inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        if (lo > hi) {
            throw ConfigError("uniform_int: lo > hi");
        }
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1u;
        return lo + static_cast<std::int64_t>(uniform_index(span));
    }

    /// Uniform in [0, 1) with 53 significant bits.
    double uniform_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in (0, 1].
    double uniform_unit_oc() {
        return static_cast<double>((next_u64() >> 11) + 1u) * 0x1.0p-53;
    }

    /// Uniform in [lo, hi).
    double uniform_real(double lo, double hi) {
        return lo + (hi - lo) * uniform_unit();
    }

    /// Standard normal deviate (Box-Muller, pair cached).
    double gaussian();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace swsig
