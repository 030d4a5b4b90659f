#pragma once

#include <vector>

#include "fpe/int128.hpp"
#include "fpe/sets.hpp"

namespace fpe {

enum class Method { Brute, Convolution, Auto };

struct EnergyValue {
    u128 value = 0;
    int k = 0;
    Kind kind = Kind::Multiplicative;
    Method used = Method::Brute;
};

// brute enumeration is refused beyond this many tuples
inline constexpr u128 kBruteBudget = 100'000'000;
// auto picks brute while |A|^(2k) stays below this
inline constexpr u128 kAutoBruteThreshold = 1'000'000;

/// E_k(A) = number of 2k-tuples with equal k-fold sums/products,
/// computed as the sum of squared representation counts. The brute
/// path tallies all |A|^k ordered k-tuples directly and never touches
/// the convolution kernel; both paths must agree exactly.
EnergyValue energy(const FpSet& A, int k, Kind kind, Method method = Method::Auto);

/// Energies for k = 2..kmax.
std::vector<EnergyValue> energy_profile(const FpSet& A, int kmax, Kind kind);

}  // namespace fpe
