#pragma once

#include <cstdint>

#include "fpe/int128.hpp"
#include "fpe/sets.hpp"

namespace fpe {

/// Exponent bookkeeping for a set A ⊆ F_p^*:
///   eta    = log|A| / log p          (alpha is the same exponent)
///   mu     = log E3(A) / log|A|
///   varrho = log|A+A| / log|A| − 1
/// ratio4_3 = E4 / (|A|·E3) and the growth statistic E3/(p·|A|·|A+A|)
/// are kept as exact rationals; note |A|^(2+varrho) = |A|·|A+A|.
struct ExponentProfile {
    uint32_t p = 0;
    size_t size = 0;
    size_t sumset_size = 0;
    u128 e3 = 0, e4 = 0;
    double eta = 0, mu = 0, varrho = 0, alpha = 0;
    Rat128 ratio4_3;
    Rat128 growth_stat;
};

ExponentProfile exponent_profile(const FpSet& A);

/// Both sides of E3(A) ≤ |A|^5·|A+A|/p + sqrt(p·|A+A|·E4(A)).
/// `holds` is theorem-backed: a false value is a build-stopping bug.
/// The comparison squares in exact integers whenever lhs > term1.
struct Eq2Report {
    u128 lhs = 0;       // E3
    Rat128 term1;       // |A|^5 |A+A| / p
    double term2 = 0;   // sqrt(p |A+A| E4)
    enum class Dominant { First, Second, Balanced } dominant = Dominant::Balanced;
    bool holds = false;
};

Eq2Report check_eq2(const FpSet& A);

// strict rectangle 1/3 < eta < 3/8, 113/24 < mu < 5
bool in_region_U(const ExponentProfile& profile);

/// Exact integer test |A|^10·|A+A| ≤ 4p^3·E4 for the second-term
/// regime, plus the size diagnostic |A|^8 < p^3 (i.e. eta < 3/8).
struct DominanceReport {
    bool second_term_regime = false;
    bool eta_below_3_8 = false;
    u128 lhs = 0;  // |A|^10 |A+A|
    u128 rhs = 0;  // 4 p^3 E4
};

DominanceReport dominance_threshold(const FpSet& A);

}  // namespace fpe
