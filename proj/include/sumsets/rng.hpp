#pragma once

#include <cstdint>

namespace sumsets {

/// splitmix64. Used everywhere randomness is needed so that seeded runs
/// are byte-identical across platforms and standard libraries.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform-ish value in [0, n) by fixed-point multiply; deterministic,
    /// bias < 2^-64 which is irrelevant at corpus scale.
    uint64_t below(uint64_t n) {
        return static_cast<uint64_t>((static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    bool coin() { return next() & 1u; }

    static uint64_t mix(uint64_t a, uint64_t b) {
        Rng r(a ^ (b * 0x9e3779b97f4a7c15ULL + 0x7f4a7c15ULL));
        return r.next();
    }

private:
    uint64_t state_;
};

}  // namespace sumsets
