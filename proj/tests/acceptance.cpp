// Acceptance suite: every criterion prints one [PASS]/[FAIL] line with
// its measured detail. Exit code = number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fpe/analysis.hpp"
#include "fpe/covering.hpp"
#include "fpe/energy.hpp"
#include "fpe/experiments.hpp"
#include "fpe/rng.hpp"
#include "fpe/spectral.hpp"

using namespace fpe;

namespace {

constexpr uint64_t kSeed = 20250809;

FpSet random_subset(const FieldPtr& field, uint64_t seed, uint64_t trial, double density,
                    bool force_one = false) {
    FpSet A = FpSet::mod_p(field);
    for (uint32_t x = 1; x < field->p(); ++x)
        if (bernoulli_element(seed, trial, x, density)) A.insert(x);
    if (force_one) A.insert(1);
    return A;
}

// 1. brute and convolution agree exactly on seeded subsets
bool criterion_oracle_equivalence(std::string& detail) {
    size_t checked = 0, mismatches = 0;
    for (uint32_t p : {7u, 11u, 13u, 31u}) {
        FieldPtr field = make_field(p);
        for (uint64_t t = 0; t < 200; ++t) {
            FpSet A = random_subset(field, kSeed, t, 0.5);
            for (int k : {2, 3, 4}) {
                if (k == 4 && A.size() > 12) continue;
                for (Kind kind : {Kind::Multiplicative, Kind::Additive}) {
                    const u128 brute = energy(A, k, kind, Method::Brute).value;
                    const u128 conv = energy(A, k, kind, Method::Convolution).value;
                    ++checked;
                    if (brute != conv) ++mismatches;
                }
            }
        }
    }
    std::ostringstream ss;
    ss << checked << " comparisons, " << mismatches << " mismatches";
    detail = ss.str();
    return mismatches == 0;
}

// 2. closed forms on subgroups
bool criterion_closed_forms(std::string& detail) {
    FieldPtr f31 = make_field(31);
    size_t bad = 0;
    for (uint32_t d : f31->divisors()) {
        FpSet H = FpSet::from_subgroup(f31, f31->subgroup_of_order(d));
        for (int k : {2, 3, 4})
            if (energy(H, k, Kind::Multiplicative).value != pow_ck(d, unsigned(2 * k - 1))) ++bad;
    }
    FieldPtr f7 = make_field(7);
    const u128 e2_full = energy(FpSet::full_multiplicative_group(f7), 2, Kind::Multiplicative).value;
    if (e2_full != 216) ++bad;
    std::ostringstream ss;
    ss << "8 subgroups of F_31 x k in {2,3,4}, E2(F_7*) = " << u128_to_string(e2_full);
    detail = ss.str();
    return bad == 0;
}

// 3. normalized monotonicity and the lower chain, exact integers
bool criterion_proposition_chain(std::string& detail) {
    FieldPtr field = make_field(101);
    size_t violations = 0, checked = 0;
    for (uint64_t t = 0; t < 1000; ++t) {
        FpSet A = random_subset(field, kSeed + 1, t, 0.5);
        if (A.empty()) continue;
        auto profile = energy_profile(A, 4, Kind::Multiplicative);
        const u128 n = A.size();
        for (size_t i = 0; i + 1 < profile.size(); ++i) {
            const unsigned k = unsigned(profile[i].k);
            ++checked;
            if (profile[i + 1].value < mul_ck(n, profile[i].value)) ++violations;
            if (mul_ck(profile[i + 1].value, pow_ck(n, 2 * k)) >
                mul_ck(profile[i].value, pow_ck(n, 2 * k + 2)))
                ++violations;
        }
    }
    std::ostringstream ss;
    ss << checked << " pairs at p=101, " << violations << " violations";
    detail = ss.str();
    return violations == 0;
}

// 4. Eq. (2) with the exact squared comparison
bool criterion_eq2(std::string& detail) {
    size_t violations = 0, checked = 0;
    for (uint32_t p : {101u, 499u}) {
        FieldPtr field = make_field(p);
        for (uint64_t t = 0; t < 1000; ++t) {
            FpSet A = random_subset(field, kSeed + 2, t, 0.5);
            if (A.empty()) continue;
            ++checked;
            if (!check_eq2(A).holds) ++violations;
        }
    }
    std::ostringstream ss;
    ss << checked << " subsets at p in {101, 499}, " << violations << " violations";
    detail = ss.str();
    return violations == 0;
}

// 5. Plancherel residuals
bool criterion_plancherel(std::string& detail) {
    double worst = 0;
    size_t violations = 0;
    for (uint32_t p : {101u, 211u}) {
        FieldPtr field = make_field(p);
        for (uint64_t t = 0; t < 100; ++t) {
            FpSet A = random_subset(field, kSeed + 3, t, 0.5);
            if (A.empty()) continue;
            const double residual = plancherel_residual(dft_indicator(A), p);
            const double bound = 1e-6 * double(p) * double(A.size());
            worst = std::max(worst, residual / bound);
            if (residual > bound) ++violations;
        }
    }
    std::ostringstream ss;
    ss << "worst residual at " << worst << " of the 1e-6*p*|A| budget";
    detail = ss.str();
    return violations == 0;
}

// 6. exponential-sum bound
bool criterion_tbound(std::string& detail) {
    FieldPtr field = make_field(101);
    size_t violations = 0;
    double worst = 0;
    for (uint64_t t = 0; t < 100; ++t) {
        FpSet A = random_subset(field, kSeed + 4, t, 0.5);
        if (A.empty()) continue;
        auto [rstar, tstar] = max_t(A);
        (void)rstar;
        const u128 e4 = energy(A, 4, Kind::Multiplicative).value;
        const double bound = std::sqrt(101.0 * double(A.size()) * u128_to_double(e4));
        worst = std::max(worst, tstar / bound);
        if (tstar > bound * (1.0 + 1e-9)) ++violations;
    }
    std::ostringstream ss;
    ss << "100 subsets at p=101, worst T*/bound = " << worst;
    detail = ss.str();
    return violations == 0;
}

// 7. covering exponent vs Olson bound, cube bound, Theorem 5.1 instance
bool criterion_covering(std::string& detail) {
    size_t cover_bad = 0, cube_bad = 0, checked = 0;
    for (uint32_t p : {7u, 11u, 13u, 31u, 61u, 101u}) {
        FieldPtr field = make_field(p);
        for (uint64_t t = 0; t < 100; ++t) {
            FpSet A = random_subset(field, kSeed + 5, t, 0.3, /*force_one=*/true);
            ++checked;
            const int j = olson_bound(A);
            auto kmin = covering_exponent(A, j);
            if (!kmin.has_value() || *kmin > j) ++cover_bad;
            const u128 cube = iterate_product(A, 3).size();
            const u128 e3 = energy(A, 3, Kind::Multiplicative).value;
            if (mul_ck(cube, e3) < pow_ck(u128(A.size()), 6)) ++cube_bad;
        }
    }
    // explicit instance p=7, A={1,3}
    FieldPtr f7 = make_field(7);
    auto k13 = covering_exponent(FpSet::of(f7, {1, 3}), 10);
    const bool explicit_ok = k13.has_value() && *k13 == 5 && olson_bound(FpSet::of(f7, {1, 3})) == 7;

    // Theorem 5.1 instance p=1009, A=[1..200]
    FieldPtr f1009 = make_field(1009);
    FpSet interval = FpSet::mod_p(f1009);
    for (int64_t x = 1; x <= 200; ++x) interval.insert(x);
    CoveringReport rep = theorem51_report(interval);
    const bool thm_ok = rep.hyp_size && rep.hypotheses_hold && rep.cube_conclusion &&
                        rep.covering_conclusion && rep.cube_iter_conclusion;

    std::ostringstream ss;
    ss << checked << " generating sets (1 in A) at p <= 101, " << cover_bad
       << " covering violations, " << cube_bad << " cube violations; {1,3}: k_min="
       << (k13 ? *k13 : -1) << " <= 7; theorem instance "
       << (thm_ok ? "verified" : "FAILED");
    detail = ss.str();
    return cover_bad == 0 && cube_bad == 0 && explicit_ok && thm_ok;
}

// 8. six-tuple constant
bool criterion_six_tuple(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    const u128 s200 = solution_count_full_interval(200);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double ratio = u128_to_double(s200) / std::pow(200.0, 5);
    std::ostringstream ss;
    ss << "S(2)=" << u128_to_string(solution_count_full_interval(2)) << ", S(200)="
       << u128_to_string(s200) << ", S(200)/200^5=" << ratio << " in " << secs << "s";
    detail = ss.str();
    return solution_count_full_interval(2) == 20 && ratio > 0.54 && ratio < 0.57 && secs < 1.0;
}

// 9. concentration sweep: slope and per-cell mean agreement
bool criterion_concentration(std::string& detail) {
    std::vector<SampleConfig> grid;
    for (int64_t N : {2000, 5000, 10000})
        for (double nrho : {50.0, 100.0, 200.0}) {
            SampleConfig cfg;
            cfg.N = N;
            cfg.rho = nrho / double(N);
            cfg.trials = 200;
            cfg.seed = kSeed + 6;
            grid.push_back(cfg);
        }
    SweepResult res = concentration_sweep(grid, 4);

    const bool slope_ok = res.slope > -0.65 && res.slope < -0.35;

    // mean within 4 standard errors of the exact expectation; one
    // re-run with the next derived seed tolerates a statistical fluke
    size_t mean_bad = 0;
    double worst_z = 0;
    for (const CellStats& cell : res.cells) {
        auto zscore = [](const CellStats& c) {
            const double se = c.stddev / std::sqrt(double(c.cfg.trials));
            return se > 0 ? std::abs(c.mean - c.e0_exact) / se : 0.0;
        };
        double z = zscore(cell);
        if (z > 4.0) {
            SampleConfig retry = cell.cfg;
            retry.seed = next_derived_seed(cell.cfg.seed);
            z = zscore(run_cell(retry, 4));
            if (z > 4.0) ++mean_bad;
        }
        worst_z = std::max(worst_z, z);
    }

    std::ostringstream ss;
    ss << "slope = " << res.slope << " (target -0.5 +/- 0.15), worst |z| = " << worst_z << ", "
       << mean_bad << " cells out of band";
    detail = ss.str();
    return slope_ok && mean_bad == 0;
}

// 10. candidate sweep runs deterministically with exact invariants
bool criterion_candidates(std::string& detail) {
    size_t bad = 0, in_u_count = 0;
    std::ostringstream trend;
    for (uint32_t p : {1009u, 2003u, 4001u}) {
        FieldPtr field = make_field(p);
        const int64_t N = int64_t(std::floor(std::pow(double(p), 0.75)));
        for (double c : {0.75, 0.85}) {
            CandidateReport rep = construct_candidate(field, N, c, kSeed + 7);
            CandidateReport again = construct_candidate(field, N, c, kSeed + 7);
            if (!(rep.size == again.size && rep.profile.e3 == again.profile.e3 &&
                  rep.profile.e4 == again.profile.e4))
                ++bad;  // determinism
            if (!rep.eq2.holds || !rep.chain_ok || !rep.prop_ok) ++bad;
            if (!std::isfinite(rep.profile.eta) || !std::isfinite(rep.profile.mu)) ++bad;
            if (rep.in_u) ++in_u_count;
            trend << " (" << p << "," << c << "): eta=" << rep.profile.eta
                  << " mu=" << rep.profile.mu;
        }
    }
    std::ostringstream ss;
    ss << "6 candidates, " << bad << " invariant failures, " << in_u_count
       << " inside U;" << trend.str();
    detail = ss.str();
    return bad == 0;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        std::function<bool(std::string&)> run;
        double budget_seconds;
    };
    const std::vector<Criterion> criteria{
        {1, "oracle equivalence (brute == convolution)", criterion_oracle_equivalence, 120},
        {2, "subgroup closed forms d^(2k-1)", criterion_closed_forms, 60},
        {3, "normalized monotonicity and lower chain", criterion_proposition_chain, 60},
        {4, "energy inequality with sumset and E4 terms", criterion_eq2, 600},
        {5, "Plancherel residuals", criterion_plancherel, 60},
        {6, "exponential-sum bound", criterion_tbound, 60},
        {7, "covering exponent, Olson bound, cube bound", criterion_covering, 120},
        {8, "six-tuple solution constant", criterion_six_tuple, 60},
        {9, "concentration scaling", criterion_concentration, 600},
        {10, "candidate construction sweep", criterion_candidates, 120},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.budget_seconds) {
            ok = false;
            detail += " [over time budget]";
        }
        std::printf("[%s] criterion %2d: %s -- %s (%.2fs)\n", ok ? "PASS" : "FAIL", c.id, c.title,
                    detail.c_str(), secs);
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    return failures;
}
