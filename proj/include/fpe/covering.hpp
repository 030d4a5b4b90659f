#pragma once

#include <cstdint>
#include <optional>

#include "fpe/int128.hpp"
#include "fpe/sets.hpp"

namespace fpe {

/// ⟨A⟩, the multiplicative subgroup generated by A: the subgroup of
/// order (p-1)/d where d = gcd of all dlog(a) together with p-1.
Subgroup generated_subgroup(const FpSet& A);

/// Smallest k ≤ kmax with A^k = ⟨A⟩, by iterating the product set with
/// early exit once the iteration stabilizes. Without 1 in A the orbit
/// may cycle and never reach the subgroup; not-reached is a value.
std::optional<int> covering_exponent(const FpSet& A, int kmax);

/// Smallest integer j with j > 2|G|/|A| for G = ⟨A⟩. Requires 1 ∈ A
/// (the covering guarantee A^j = G needs it).
int olson_bound(const FpSet& A);

// |A|^6 / E3(A); |A^3| is at least this, exactly
Rat128 cube_lower_bound(const FpSet& A);

/// Small-doubling covering report. Hypotheses: 1 ∈ A, K = |A+A|/|A|,
/// and the size test |A| > p^(3/4)/K^(1/4), evaluated exactly as
/// |A|^3·|A+A| > p^3. When they hold, the two conclusions
/// |A^3| > p/(2K) and A^ceil(12K) = ⟨A⟩ are asserted (theorem-backed).
struct CoveringReport {
    Rat128 K;                       // |A+A| / |A|
    bool has_one = false;
    bool hyp_size = false;          // |A|^3 |A+A| > p^3
    bool hypotheses_hold = false;   // has_one && hyp_size
    size_t cube_size = 0;           // |A^3|
    Rat128 cube_bound;              // p / (2K)
    uint32_t gen_order = 0;         // |⟨A⟩|
    std::optional<int> k_min;       // smallest k with A^k = ⟨A⟩
    int olson_j = 0;                // 0 when 1 ∉ A
    int twelve_k = 0;               // ceil(12K)
    int four_k = 0;                 // ceil(4K)
    u128 e3 = 0;
    bool cube_energy_bound = false;  // |A^3|·E3 >= |A|^6
    bool cube_conclusion = false;    // 2|A^3|·|A+A| > p·|A|
    bool covering_conclusion = false;  // A^ceil(12K) = ⟨A⟩
    bool cube_iter_conclusion = false; // (A^3)^ceil(4K) = ⟨A⟩
};

CoveringReport theorem51_report(const FpSet& A, int kmax = 0);

}  // namespace fpe
