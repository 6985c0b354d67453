#pragma once

#include <cstdint>

namespace ffd {

// SplitMix64: tiny counter-based generator, identical output on every
// platform for a fixed seed. Used wherever reproducibility is contractual.
struct SplitMix64 {
    uint64_t state;

    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double next_double() { return double(next() >> 11) * 0x1.0p-53; }
};

// Independent substream for (seed, index) pairs, e.g. one per control point.
inline SplitMix64 substream(uint64_t seed, uint64_t index) {
    SplitMix64 mixer(seed + 0x9E3779B97F4A7C15ULL * (index + 1));
    return SplitMix64(mixer.next());
}

}  // namespace ffd
