#pragma once

// Deterministic 64-bit generator used by the separable-state sampler.
// SplitMix64 (Steele/Lea/Flood mixing constants). A stream is keyed by a
// (seed, index) pair; changing the scheme is a breaking change for every
// persisted survey CSV, see README.

#include <cstdint>

namespace qspeed {

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    // Stream fully determined by (seed, index).
    static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
        return SplitMix64(mix64(seed) ^ mix64(index + 0x9E3779B97F4A7C15ULL));
    }

    std::uint64_t state() const { return state_; }

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

}  // namespace qspeed
