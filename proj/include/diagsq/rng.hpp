#pragma once

#include <cstdint>

#include "diagsq/bigint.hpp"

namespace diagsq {

// SplitMix64: tiny, seedable, identical output on every platform.  Used by
// every seeded harness so reports replay byte-identically.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound) via rejection; bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform integer in [lo, hi], inclusive.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(
                        below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

  private:
    std::uint64_t state_;
};

// Derives an independent per-trial seed from a base seed; keeps concurrent
// fuzz trials decoupled while remaining a pure function of (seed, trial).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trial) {
    SplitMix64 g(seed ^ (0xD1B54A32D192ED03ULL * (trial + 1)));
    return g.next();
}

}  // namespace diagsq
