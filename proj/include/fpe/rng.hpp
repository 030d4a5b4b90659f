#pragma once

#include <cstdint>

namespace fpe {

// SplitMix64 finalizer; the whole random layer is built from it so that
// every draw is a pure function of (seed, trial, element) and results
// are identical under any execution order or worker count.
inline uint64_t mix64(uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

inline constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline double unit_double(uint64_t h) { return double(h >> 11) * 0x1.0p-53; }

inline bool bernoulli_element(uint64_t seed, uint64_t trial, uint64_t element, double rho) {
    uint64_t h = mix64(seed);
    h = mix64(h ^ (trial * kGolden + 1));
    h = mix64(h ^ (element * kGolden + 2));
    return unit_double(h) < rho;
}

// seed for the automatic re-run after a flaky statistical failure
inline uint64_t next_derived_seed(uint64_t seed) { return mix64(seed ^ 0x5eedULL); }

}  // namespace fpe
