#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fpe/analysis.hpp"
#include "fpe/int128.hpp"
#include "fpe/sets.hpp"

namespace fpe {

/// One cell of the random construction: sample each element of [1..N]
/// independently with probability rho. Interval mode counts additive
/// six-tuple solutions x1+x2+x3 = x4+x5+x6; mod-p mode embeds [1..N]
/// in F_p^* (N <= p-1) and counts x1·x2·x3 = x4·x5·x6.
struct SampleConfig {
    enum class Mode { IntervalAdditive, ModPMultiplicative };
    int64_t N = 0;
    double rho = 0;
    uint64_t seed = 0;
    int trials = 1;
    Mode mode = Mode::IntervalAdditive;
    FieldPtr field;  // ModP mode

    void validate() const;
};

// deterministic: a pure function of (seed, trial_index, element)
FpSet sample(const SampleConfig& cfg, int trial_index);

// F = Σ_s r3(s)^2 over the 3-fold representation function of A
u128 count_solutions(const FpSet& A);

// S(N): six-tuple solution count of the full interval [1..N]
u128 solution_count_full_interval(int64_t N);

/// S(N)·rho^6 together with the crude lower bound (N^5/10)·rho^6 and
/// the asymptotic (11/20)·N^5·rho^6.
struct E0Report {
    u128 s_n = 0;
    double value = 0;
    double lower_bound = 0;
    double asymptotic = 0;
};

E0Report exact_e0(int64_t N, double rho);

/// Expectation of the six-slot counter with some slots pinned:
/// (#completions of the fixed slots to a solution) · rho^(6-i).
/// Slots are numbered 1..6; 1-3 sit on the left side of the equation.
double partial_expectation(int64_t N, double rho,
                           const std::vector<std::pair<int, int64_t>>& fixed);

/// E* = max over nonempty slot subsets and values of the partial
/// expectation. Exhaustive over every (pattern, value sums) for
/// N <= kEStarExhaustiveLimit; beyond that only i = 1 is maximized
/// (the partial expectations decrease in i once N·rho is large).
struct EStarReport {
    double value = 0;
    int fixed_slots = 0;        // arg-max i
    bool exhaustive = false;
    bool low_density_warning = false;  // N·rho < 1
};

inline constexpr int64_t kEStarExhaustiveLimit = 60;

EStarReport e_star(int64_t N, double rho);

// a·sqrt(E0·E*)·lambda^6 with a = 8^6·sqrt(720); requires lambda > 1
double kimvu_threshold(double e0, double estar, double lambda);
inline constexpr double kKimVuB = 2.0 * 2.718281828459045 * 2.718281828459045;  // 2e^2

/// rho-independent exact solution-pattern counts for one ambient model:
/// for every equality pattern of the six slots, the number of solution
/// tuples realizing exactly that pattern. The expectation of F under
/// Bernoulli(rho) sampling is Σ D_pattern · rho^(#blocks), exactly.
struct PatternCounts {
    int64_t N = 0;
    u128 total = 0;  // Σ D = S(N) (or its mod-p analogue)
    std::vector<std::pair<int, u128>> by_blocks;  // (#blocks, D), one entry per pattern
};

PatternCounts solution_pattern_counts(int64_t N);
PatternCounts solution_pattern_counts_modp(const PrimeField& field, int64_t N);
double expected_f(const PatternCounts& pc, double rho);

/// Per-cell concentration statistics. e0_exact is the exact expectation
/// of F (pattern-count form); e0_solution_form = S(N)·rho^6 keeps the
/// simpler formula visible next to it. rel_dev is the root-mean-square
/// of (F - e0_exact)/e0_exact over the trials.
struct TrialRow {
    int trial = 0;
    size_t set_size = 0;
    u128 f = 0;
    double rel_dev = 0;
};

struct CellStats {
    SampleConfig cfg;
    std::vector<TrialRow> rows;
    u128 s_n = 0;
    double e0_exact = 0;
    double e0_solution_form = 0;
    double e0_asymptotic = 0;
    double estar = 0;
    double mean = 0, stddev = 0, rel_dev = 0;
    std::vector<double> lambdas, thresholds, tail_fractions;
};

// default lambda grid for the tail report
inline const std::vector<double> kLambdaGrid{1.5, 2.0, 3.0};

CellStats run_cell(const SampleConfig& cfg, unsigned jobs = 1);

/// Grid sweep with the log-log regression of rel_dev against N·rho.
struct SweepResult {
    std::vector<CellStats> cells;
    double slope = 0;
    double intercept = 0;
};

SweepResult concentration_sweep(const std::vector<SampleConfig>& grid, unsigned jobs = 1);

/// rho = N^((c-1)/(2-c)) with the predicted size & energy exponents.
struct RhoChoice {
    double rho = 0;
    double exponent = 0;        // (c-1)/(2-c)
    double predicted_size = 0;  // N^(1/(2-c))
    double predicted_mu = 0;    // 4 + c
    bool in_admissible_range = false;  // 17/24 < c < 1
};

RhoChoice rho_from_c(int64_t N, double c);

/// Samples A ⊆ [1..N] ⊆ F_p^* with rho = rho_from_c(N, c) and reports
/// the full exponent profile plus the exact inequality checks. No
/// pass/fail verdict is attached to the asymptotic ratio itself.
struct CandidateReport {
    uint32_t p = 0;
    int64_t N = 0;
    double c = 0, rho = 0;
    uint64_t seed = 0;
    size_t size = 0;
    ExponentProfile profile;
    bool in_u = false;
    Eq2Report eq2;
    bool chain_ok = false;  // E_{k+1} >= |A| E_k, k = 2,3
    bool prop_ok = false;   // E_{k+1} <= |A|^2 E_k, k = 2,3
};

CandidateReport construct_candidate(FieldPtr field, int64_t N, double c, uint64_t seed);

}  // namespace fpe
