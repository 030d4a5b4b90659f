#include "fpe/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "fpe/energy.hpp"
#include "fpe/parallel.hpp"
#include "fpe/rng.hpp"

namespace fpe {

// ------------------------------------------------------------ sampling

void SampleConfig::validate() const {
    if (N < 1) throw std::invalid_argument("sample: N must be at least 1");
    if (!(rho > 0.0) || rho > 1.0) throw std::invalid_argument("sample: rho must lie in (0, 1]");
    if (trials < 1) throw std::invalid_argument("sample: trials must be at least 1");
    if (mode == Mode::ModPMultiplicative) {
        if (!field) throw std::invalid_argument("sample: mod-p mode requires a field");
        if (N > int64_t(field->p()) - 1)
            throw std::invalid_argument(
                "sample: mod-p mode requires N <= p-1 (N = p would include 0)");
    }
}

FpSet sample(const SampleConfig& cfg, int trial_index) {
    cfg.validate();
    FpSet A = cfg.mode == SampleConfig::Mode::IntervalAdditive ? FpSet::interval(1, cfg.N)
                                                                : FpSet::mod_p(cfg.field);
    for (int64_t x = 1; x <= cfg.N; ++x)
        if (bernoulli_element(cfg.seed, uint64_t(trial_index), uint64_t(x), cfg.rho)) A.insert(x);
    return A;
}

u128 count_solutions(const FpSet& A) {
    const Kind kind = A.is_mod_p() ? Kind::Multiplicative : Kind::Additive;
    return rep_function(A, 3, kind).sum_of_squares();
}

// ---------------------------------------------- full-interval machinery

namespace {

// new[s] = sum_{v=1..N} old[s-v], via prefix sums
std::vector<u128> fold_interval(const std::vector<u128>& old, int64_t N) {
    std::vector<u128> prefix(old.size() + 1, 0);
    for (size_t i = 0; i < old.size(); ++i) prefix[i + 1] = add_ck(prefix[i], old[i]);
    std::vector<u128> out(old.size(), 0);
    for (int64_t s = 0; s < int64_t(old.size()); ++s) {
        int64_t hi = std::min<int64_t>(s, int64_t(old.size()));  // exclusive prefix index
        int64_t lo = std::max<int64_t>(s - N, 0);
        if (hi > lo) out[size_t(s)] = prefix[size_t(hi)] - prefix[size_t(lo)];
    }
    return out;
}

// r[j][s] = number of j-term ordered sums from [1..N] equal to s, j = 0..3
std::array<std::vector<u128>, 4> interval_rep_tables(int64_t N) {
    std::array<std::vector<u128>, 4> r;
    const size_t size = size_t(3 * N) + 1;
    r[0].assign(size, 0);
    r[0][0] = 1;
    for (int j = 1; j <= 3; ++j) r[size_t(j)] = fold_interval(r[size_t(j) - 1], N);
    return r;
}

// correlation: sum_u r_l(u) * r_m(u + d)
u128 table_corr(const std::vector<u128>& rl, const std::vector<u128>& rm, int64_t d) {
    u128 acc = 0;
    const int64_t size = int64_t(rl.size());
    int64_t u_lo = std::max<int64_t>(0, -d);
    int64_t u_hi = std::min<int64_t>(size, size - d);
    for (int64_t u = u_lo; u < u_hi; ++u) {
        if (rl[size_t(u)] == 0) continue;
        u128 b = rm[size_t(u + d)];
        if (b != 0) acc = add_ck(acc, mul_ck(rl[size_t(u)], b));
    }
    return acc;
}

}  // namespace

u128 solution_count_full_interval(int64_t N) {
    if (N < 1) throw std::invalid_argument("solution count: N must be at least 1");
    auto r = interval_rep_tables(N);
    u128 s = 0;
    for (u128 c : r[3])
        if (c != 0) s = add_ck(s, mul_ck(c, c));
    return s;
}

E0Report exact_e0(int64_t N, double rho) {
    if (!(rho > 0.0) || rho > 1.0) throw std::invalid_argument("exact_e0: rho must lie in (0, 1]");
    E0Report rep;
    rep.s_n = solution_count_full_interval(N);
    const double r6 = std::pow(rho, 6);
    rep.value = u128_to_double(rep.s_n) * r6;
    rep.lower_bound = std::pow(double(N), 5) / 10.0 * r6;
    rep.asymptotic = 11.0 / 20.0 * std::pow(double(N), 5) * r6;
    return rep;
}

// ------------------------------------------------- partial expectations

double partial_expectation(int64_t N, double rho,
                           const std::vector<std::pair<int, int64_t>>& fixed) {
    if (N < 1) throw std::invalid_argument("partial_expectation: N must be at least 1");
    if (fixed.empty() || fixed.size() > 6)
        throw std::invalid_argument("partial_expectation: fix between 1 and 6 slots");
    bool seen[7] = {};
    int lf = 0, mf = 0;
    int64_t sL = 0, sR = 0;
    for (auto [slot, value] : fixed) {
        if (slot < 1 || slot > 6)
            throw std::invalid_argument("partial_expectation: slot indices run 1..6");
        if (seen[slot]) throw std::invalid_argument("partial_expectation: duplicate slot");
        seen[slot] = true;
        if (value < 1 || value > N)
            throw std::invalid_argument("partial_expectation: fixed value outside [1, N]");
        if (slot <= 3) {
            ++lf;
            sL += value;
        } else {
            ++mf;
            sR += value;
        }
    }
    auto r = interval_rep_tables(N);
    const u128 completions = table_corr(r[size_t(3 - lf)], r[size_t(3 - mf)], sL - sR);
    return u128_to_double(completions) * std::pow(rho, 6.0 - double(fixed.size()));
}

EStarReport e_star(int64_t N, double rho) {
    if (N < 1) throw std::invalid_argument("e_star: N must be at least 1");
    if (!(rho > 0.0) || rho > 1.0) throw std::invalid_argument("e_star: rho must lie in (0, 1]");
    EStarReport rep;
    rep.low_density_warning = double(N) * rho < 1.0;
    auto r = interval_rep_tables(N);

    if (N <= kEStarExhaustiveLimit) {
        rep.exhaustive = true;
        // all fix patterns 1 <= lf+mf <= 5; every sum pair in the
        // rectangle [lf, lf*N] x [mf, mf*N] is achievable by values
        for (int lf = 0; lf <= 3; ++lf) {
            for (int mf = 0; mf <= 3; ++mf) {
                const int i = lf + mf;
                if (i < 1 || i > 5) continue;
                const double scale = std::pow(rho, 6.0 - double(i));
                const int64_t d_lo = lf - mf * N, d_hi = lf * int64_t(N) - mf;
                for (int64_t d = d_lo; d <= d_hi; ++d) {
                    u128 c = table_corr(r[size_t(3 - lf)], r[size_t(3 - mf)], d);
                    double v = u128_to_double(c) * scale;
                    if (v > rep.value) {
                        rep.value = v;
                        rep.fixed_slots = i;
                    }
                }
            }
        }
        return rep;
    }

    // large N: the expectations decrease in the number of fixed slots,
    // so only i = 1 is scanned (left/right are symmetric)
    u128 best = 0;
    for (int64_t x = 1; x <= N; ++x) best = std::max(best, table_corr(r[2], r[3], x));
    rep.value = u128_to_double(best) * std::pow(rho, 5);
    rep.fixed_slots = 1;
    return rep;
}

double kimvu_threshold(double e0, double estar, double lambda) {
    if (!(lambda > 1.0))
        throw std::invalid_argument("kimvu_threshold: the tail bound requires lambda > 1");
    static const double a = 262144.0 * std::sqrt(720.0);  // 8^6 * sqrt(6!)
    return a * std::sqrt(e0 * estar) * std::pow(lambda, 6);
}

// ---------------------------------------------------- pattern counting

namespace {

struct Pattern {
    std::array<int8_t, 6> block_of{};
    int blocks = 0;
};

// all 203 set partitions of the six slots, as restricted-growth strings
std::vector<Pattern> all_patterns() {
    std::vector<Pattern> out;
    std::array<int8_t, 6> a{};
    auto rec = [&](auto&& self, int pos, int maxb) -> void {
        if (pos == 6) {
            out.push_back({a, maxb + 1});
            return;
        }
        for (int8_t b = 0; b <= maxb + 1; ++b) {
            a[size_t(pos)] = b;
            self(self, pos + 1, std::max(maxb, int(b)));
        }
    };
    a[0] = 0;
    rec(rec, 1, 0);
    return out;
}

// sig refines tau: equal slots under sig stay equal under tau
bool refines(const Pattern& sig, const Pattern& tau) {
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            if (sig.block_of[size_t(i)] == sig.block_of[size_t(j)] &&
                tau.block_of[size_t(i)] != tau.block_of[size_t(j)])
                return false;
    return true;
}

// signed block coefficients: (#slots on the left) - (#slots on the right)
std::vector<int> block_coeffs(const Pattern& p) {
    std::vector<int> c(size_t(p.blocks), 0);
    for (int i = 0; i < 6; ++i) c[size_t(p.block_of[size_t(i)])] += (i < 3) ? 1 : -1;
    return c;
}

// new[s] = sum_{v=1..N} old[s - c*v], windowed prefix sums per residue
// class mod |c|
std::vector<u128> fold_coeff(const std::vector<u128>& old, int64_t c, int64_t N) {
    const int64_t size = int64_t(old.size());
    const int64_t step = std::abs(c);
    std::vector<u128> out(old.size(), 0);
    std::vector<u128> prefix;
    for (int64_t r0 = 0; r0 < step; ++r0) {
        const int64_t m = (size - r0 + step - 1) / step;  // class length
        prefix.assign(size_t(m) + 1, 0);
        for (int64_t i = 0; i < m; ++i)
            prefix[size_t(i) + 1] = add_ck(prefix[size_t(i)], old[size_t(r0 + i * step)]);
        for (int64_t i = 0; i < m; ++i) {
            int64_t lo, hi;  // window in class indices, half-open
            if (c > 0) {
                lo = std::max<int64_t>(i - N, 0);
                hi = std::max<int64_t>(std::min<int64_t>(i, m), 0);
            } else {
                lo = std::min<int64_t>(i + 1, m);
                hi = std::min<int64_t>(i + N + 1, m);
            }
            if (hi > lo) out[size_t(r0 + i * step)] = prefix[size_t(hi)] - prefix[size_t(lo)];
        }
    }
    return out;
}

// #{v in [1..N]^len(coeffs) : sum c_i v_i = 0}, integer version
u128 count_linear_solutions(const std::vector<int>& coeffs, int64_t N) {
    std::vector<int64_t> nz;
    int zeros = 0;
    for (int c : coeffs)
        c == 0 ? (void)++zeros : (void)nz.push_back(c);
    u128 free_factor = pow_ck(u128(N), unsigned(zeros));
    if (nz.empty()) return free_factor;
    int64_t lo = 0, hi = 0;
    for (int64_t c : nz) (c < 0 ? lo : hi) += c * N;
    std::vector<u128> cur(size_t(hi - lo) + 1, 0);
    cur[size_t(-lo)] = 1;
    for (int64_t c : nz) cur = fold_coeff(cur, c, N);
    return mul_ck(cur[size_t(-lo)], free_factor);
}

// cyclic version over Z_{p-1} through the dlog map:
// #{v in [1..N]^len : prod v_i^{c_i} = 1 in F_p^*}
u128 count_cyclic_solutions(const std::vector<int>& coeffs, const PrimeField& field, int64_t N) {
    const int64_t m = field.p() - 1;
    std::vector<int64_t> nz;
    int zeros = 0;
    for (int c : coeffs)
        c == 0 ? (void)++zeros : (void)nz.push_back(c);
    u128 free_factor = pow_ck(u128(N), unsigned(zeros));
    if (nz.empty()) return free_factor;
    std::vector<u128> cur(size_t(m), 0);
    cur[0] = 1;
    std::vector<u128> next(size_t(m), 0);
    for (int64_t c : nz) {
        std::fill(next.begin(), next.end(), u128(0));
        for (int64_t v = 1; v <= N; ++v) {
            int64_t shift = (c % m) * int64_t(field.dlog(uint32_t(v))) % m;
            if (shift < 0) shift += m;
            for (int64_t e = 0; e < m; ++e) {
                if (cur[size_t(e)] == 0) continue;
                int64_t t = e + shift;
                if (t >= m) t -= m;
                next[size_t(t)] = add_ck(next[size_t(t)], cur[size_t(e)]);
            }
        }
        cur = next;
    }
    return mul_ck(cur[0], free_factor);
}

template <class ZFunc>
PatternCounts pattern_counts_impl(int64_t N, ZFunc&& z_of) {
    const std::vector<Pattern> patterns = all_patterns();
    // group by coefficient multiset; the count depends on nothing else
    std::map<std::vector<int>, u128> z_cache;
    std::vector<u128> Z(patterns.size());
    for (size_t i = 0; i < patterns.size(); ++i) {
        std::vector<int> key = block_coeffs(patterns[i]);
        std::sort(key.begin(), key.end());
        auto it = z_cache.find(key);
        if (it == z_cache.end()) it = z_cache.emplace(key, z_of(key)).first;
        Z[i] = it->second;
    }
    // subtract strictly coarser exact counts, coarse patterns first
    std::vector<size_t> order(patterns.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return patterns[a].blocks < patterns[b].blocks; });
    std::vector<u128> D(patterns.size());
    for (size_t oi = 0; oi < order.size(); ++oi) {
        const size_t i = order[oi];
        u128 d = Z[i];
        for (size_t oj = 0; oj < oi; ++oj) {
            const size_t j = order[oj];
            if (patterns[j].blocks < patterns[i].blocks && refines(patterns[i], patterns[j])) {
                if (D[j] > d) throw std::logic_error("pattern counts: negative exact count");
                d -= D[j];
            }
        }
        D[i] = d;
    }
    PatternCounts pc;
    pc.N = N;
    pc.by_blocks.reserve(patterns.size());
    for (size_t i = 0; i < patterns.size(); ++i) {
        pc.by_blocks.emplace_back(patterns[i].blocks, D[i]);
        pc.total = add_ck(pc.total, D[i]);
    }
    return pc;
}

}  // namespace

PatternCounts solution_pattern_counts(int64_t N) {
    if (N < 1) throw std::invalid_argument("pattern counts: N must be at least 1");
    PatternCounts pc = pattern_counts_impl(
        N, [N](const std::vector<int>& coeffs) { return count_linear_solutions(coeffs, N); });
    if (pc.total != solution_count_full_interval(N))
        throw std::logic_error("pattern counts: totals disagree with the solution count");
    return pc;
}

PatternCounts solution_pattern_counts_modp(const PrimeField& field, int64_t N) {
    if (N < 1 || N > int64_t(field.p()) - 1)
        throw std::invalid_argument("pattern counts: need 1 <= N <= p-1");
    return pattern_counts_impl(N, [&](const std::vector<int>& coeffs) {
        return count_cyclic_solutions(coeffs, field, N);
    });
}

double expected_f(const PatternCounts& pc, double rho) {
    double e = 0;
    for (auto [blocks, d] : pc.by_blocks) e += u128_to_double(d) * std::pow(rho, blocks);
    return e;
}

// -------------------------------------------------------- cells, sweeps

namespace {

// rho-independent data shared by all cells with one ambient model
struct CellModel {
    u128 s_n = 0;
    PatternCounts pc;
    u128 max_single_slot = 0;  // max completions with one slot fixed
    bool exhaustive_estar = false;
    int64_t N = 0;
};

CellModel build_model(const SampleConfig& cfg) {
    CellModel m;
    m.N = cfg.N;
    if (cfg.mode == SampleConfig::Mode::IntervalAdditive) {
        m.s_n = solution_count_full_interval(cfg.N);
        m.pc = solution_pattern_counts(cfg.N);
        if (cfg.N <= kEStarExhaustiveLimit) {
            m.exhaustive_estar = true;
        } else {
            auto r = interval_rep_tables(cfg.N);
            for (int64_t x = 1; x <= cfg.N; ++x)
                m.max_single_slot = std::max(m.max_single_slot, table_corr(r[2], r[3], x));
        }
    } else {
        const PrimeField& field = *cfg.field;
        m.pc = solution_pattern_counts_modp(field, cfg.N);
        m.s_n = m.pc.total;
        // completions with one slot fixed, through the exponent space
        const int64_t mm = field.p() - 1;
        std::vector<u128> base(size_t(mm), 0);
        for (int64_t v = 1; v <= cfg.N; ++v) base[field.dlog(uint32_t(v))] += 1;
        std::vector<u128> q2 = cyclic_convolve(base, base);
        std::vector<u128> q3 = cyclic_convolve(q2, base);
        for (int64_t x = 1; x <= cfg.N; ++x) {
            const int64_t dx = field.dlog(uint32_t(x));
            u128 acc = 0;
            for (int64_t e = 0; e < mm; ++e) {
                if (q2[size_t(e)] == 0) continue;
                int64_t t = e + dx;
                if (t >= mm) t -= mm;
                acc = add_ck(acc, mul_ck(q2[size_t(e)], q3[size_t(t)]));
            }
            m.max_single_slot = std::max(m.max_single_slot, acc);
        }
    }
    return m;
}

CellStats run_cell_with_model(const SampleConfig& cfg, const CellModel& model, unsigned jobs) {
    CellStats cs;
    cs.cfg = cfg;
    cs.s_n = model.s_n;
    cs.e0_exact = expected_f(model.pc, cfg.rho);
    cs.e0_solution_form = u128_to_double(model.s_n) * std::pow(cfg.rho, 6);
    cs.e0_asymptotic = 11.0 / 20.0 * std::pow(double(cfg.N), 5) * std::pow(cfg.rho, 6);
    cs.estar = model.exhaustive_estar ? e_star(cfg.N, cfg.rho).value
                                      : u128_to_double(model.max_single_slot) * std::pow(cfg.rho, 5);

    cs.rows.assign(size_t(cfg.trials), {});
    parallel_for(size_t(cfg.trials), jobs, [&](size_t t) {
        FpSet A = sample(cfg, int(t));
        TrialRow row;
        row.trial = int(t);
        row.set_size = A.size();
        row.f = count_solutions(A);
        row.rel_dev = std::abs(u128_to_double(row.f) - cs.e0_exact) / cs.e0_exact;
        cs.rows[t] = row;
    });

    double sum = 0;
    for (const TrialRow& r : cs.rows) sum += u128_to_double(r.f);
    cs.mean = sum / double(cfg.trials);
    double ss = 0, dev2 = 0;
    for (const TrialRow& r : cs.rows) {
        const double d = u128_to_double(r.f) - cs.mean;
        ss += d * d;
        const double rd = (u128_to_double(r.f) - cs.e0_exact) / cs.e0_exact;
        dev2 += rd * rd;
    }
    cs.stddev = cfg.trials > 1 ? std::sqrt(ss / double(cfg.trials - 1)) : 0.0;
    cs.rel_dev = std::sqrt(dev2 / double(cfg.trials));

    for (double lam : kLambdaGrid) {
        const double thr = kimvu_threshold(cs.e0_exact, cs.estar, lam);
        size_t exceed = 0;
        for (const TrialRow& r : cs.rows)
            if (std::abs(u128_to_double(r.f) - cs.e0_exact) > thr) ++exceed;
        cs.lambdas.push_back(lam);
        cs.thresholds.push_back(thr);
        cs.tail_fractions.push_back(double(exceed) / double(cfg.trials));
    }
    return cs;
}

}  // namespace

CellStats run_cell(const SampleConfig& cfg, unsigned jobs) {
    cfg.validate();
    return run_cell_with_model(cfg, build_model(cfg), jobs);
}

SweepResult concentration_sweep(const std::vector<SampleConfig>& grid, unsigned jobs) {
    if (grid.empty()) throw std::invalid_argument("sweep: empty grid");
    SweepResult res;
    std::map<std::pair<uint32_t, int64_t>, CellModel> models;  // (p or 0, N)
    for (const SampleConfig& cfg : grid) {
        cfg.validate();
        const std::pair<uint32_t, int64_t> key{
            cfg.mode == SampleConfig::Mode::ModPMultiplicative ? cfg.field->p() : 0, cfg.N};
        auto it = models.find(key);
        if (it == models.end()) it = models.emplace(key, build_model(cfg)).first;
        res.cells.push_back(run_cell_with_model(cfg, it->second, jobs));
    }
    // least squares of log(rel_dev) on log(N*rho)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    size_t n = 0;
    for (const CellStats& c : res.cells) {
        if (!(c.rel_dev > 0)) continue;
        const double x = std::log(double(c.cfg.N) * c.cfg.rho), y = std::log(c.rel_dev);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n >= 2 && sxx * double(n) - sx * sx != 0) {
        res.slope = (double(n) * sxy - sx * sy) / (double(n) * sxx - sx * sx);
        res.intercept = (sy - res.slope * sx) / double(n);
    } else {
        res.slope = res.intercept = std::numeric_limits<double>::quiet_NaN();
    }
    return res;
}

// ------------------------------------------------- candidate construction

RhoChoice rho_from_c(int64_t N, double c) {
    if (N < 1) throw std::invalid_argument("rho_from_c: N must be at least 1");
    if (c > 1.0) throw std::invalid_argument("rho_from_c: c > 1 gives rho > 1");
    RhoChoice rc;
    rc.exponent = (c - 1.0) / (2.0 - c);
    rc.rho = std::pow(double(N), rc.exponent);
    rc.predicted_size = std::pow(double(N), 1.0 / (2.0 - c));
    rc.predicted_mu = 4.0 + c;
    rc.in_admissible_range = c > 17.0 / 24.0 && c < 1.0;
    return rc;
}

CandidateReport construct_candidate(FieldPtr field, int64_t N, double c, uint64_t seed) {
    if (!field) throw std::invalid_argument("construct_candidate: field required");
    if (N < 1 || N > int64_t(field->p()) - 1)
        throw std::invalid_argument("construct_candidate: need 1 <= N <= p-1 (N = p hits 0)");

    CandidateReport rep;
    rep.p = field->p();
    rep.N = N;
    rep.c = c;
    rep.seed = seed;
    rep.rho = rho_from_c(N, c).rho;

    FpSet A = FpSet::mod_p(field);
    for (int64_t x = 1; x <= N; ++x)
        if (bernoulli_element(seed, 0, uint64_t(x), rep.rho)) A.insert(x);
    rep.size = A.size();
    if (A.size() < 2)
        throw std::invalid_argument("construct_candidate: sampled set too small; vary the seed");

    rep.profile = exponent_profile(A);
    rep.in_u = in_region_U(rep.profile);
    rep.eq2 = check_eq2(A);

    const u128 n = A.size();
    const u128 e2 = energy(A, 2, Kind::Multiplicative).value;
    const u128 e3 = rep.profile.e3, e4 = rep.profile.e4;
    rep.chain_ok = e3 >= mul_ck(n, e2) && e4 >= mul_ck(n, e3);
    rep.prop_ok = e3 <= mul_ck(mul_ck(n, n), e2) && e4 <= mul_ck(mul_ck(n, n), e3);
    return rep;
}

}  // namespace fpe
