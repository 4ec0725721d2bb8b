// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace ousect {

// Deterministic cross-platform generator for seeded witness starts and
// test sweeps; std::uniform_real_distribution is implementation-defined,
// this is not.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform01() { return double(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }
};

}  // namespace ousect
