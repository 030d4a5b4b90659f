#include "fpe/covering.hpp"

#include <numeric>
#include <stdexcept>

#include "fpe/energy.hpp"

namespace fpe {

namespace {

void require_mult_set(const FpSet& A, const char* who) {
    if (!A.is_mod_p()) throw std::invalid_argument(std::string(who) + ": requires a mod-p set");
    if (A.contains_zero())
        throw std::invalid_argument(std::string(who) + ": multiplicative structure undefined at 0");
}

}  // namespace

Subgroup generated_subgroup(const FpSet& A) {
    require_mult_set(A, "generated_subgroup");
    if (A.empty()) throw std::invalid_argument("generated_subgroup: empty set");
    const PrimeField& field = A.field();
    uint32_t d = field.p() - 1;
    for (uint32_t e : dlog_image(field, A)) d = std::gcd(d, e);
    return field.subgroup_of_order((field.p() - 1) / d);
}

std::optional<int> covering_exponent(const FpSet& A, int kmax) {
    require_mult_set(A, "covering_exponent");
    if (A.empty()) throw std::invalid_argument("covering_exponent: empty set");
    if (kmax < 1) throw std::invalid_argument("covering_exponent: kmax must be at least 1");

    const uint32_t target = generated_subgroup(A).order;
    FpSet cur = A;
    for (int k = 1; k <= kmax; ++k) {
        // A^k ⊆ ⟨A⟩ always, so reaching the order means reaching the set
        if (cur.size() == target) return k;
        FpSet next = productset(cur, A);
        if (next == cur) return std::nullopt;  // stabilized below ⟨A⟩ (only possible without 1)
        cur = std::move(next);
    }
    return std::nullopt;
}

int olson_bound(const FpSet& A) {
    require_mult_set(A, "olson_bound");
    if (!A.contains(1))
        throw std::invalid_argument("olson_bound: requires 1 in A (covering guarantee needs it)");
    const uint32_t g = generated_subgroup(A).order;
    // smallest integer strictly greater than 2|G|/|A|
    return int(2 * uint64_t(g) / A.size()) + 1;
}

Rat128 cube_lower_bound(const FpSet& A) {
    require_mult_set(A, "cube_lower_bound");
    if (A.empty()) throw std::invalid_argument("cube_lower_bound: empty set");
    const u128 e3 = energy(A, 3, Kind::Multiplicative).value;
    return Rat128(pow_ck(A.size(), 6), e3);
}

CoveringReport theorem51_report(const FpSet& A, int kmax) {
    require_mult_set(A, "theorem51_report");
    if (A.empty()) throw std::invalid_argument("theorem51_report: empty set");

    CoveringReport rep;
    const u128 p = A.modulus();
    const u128 n = A.size();
    const FpSet AA = sumset(A, A);
    const u128 s = AA.size();

    rep.K = Rat128(s, n);
    rep.has_one = A.contains(1);
    // |A| > p^(3/4) / K^(1/4)  <=>  |A|^4 K > p^3  <=>  |A|^3 |A+A| > p^3
    rep.hyp_size = mul_ck(pow_ck(n, 3), s) > pow_ck(p, 3);
    rep.hypotheses_hold = rep.has_one && rep.hyp_size;

    const FpSet cube = iterate_product(A, 3);
    rep.cube_size = cube.size();
    rep.cube_bound = Rat128(mul_ck(p, rep.K.den), mul_ck(2, rep.K.num));

    const Subgroup gen = generated_subgroup(A);
    rep.gen_order = gen.order;
    rep.twelve_k = int(rep.K.ceil_times(12));
    rep.four_k = int(rep.K.ceil_times(4));
    if (rep.has_one) rep.olson_j = olson_bound(A);

    int search = kmax > 0 ? kmax : std::max(rep.twelve_k, rep.olson_j) + 1;
    rep.k_min = covering_exponent(A, search);

    rep.e3 = energy(A, 3, Kind::Multiplicative).value;
    rep.cube_energy_bound = mul_ck(u128(rep.cube_size), rep.e3) >= pow_ck(n, 6);
    // |A^3| > p/(2K)  <=>  2 |A^3| |A+A| > p |A|
    rep.cube_conclusion = mul_ck(mul_ck(2, u128(rep.cube_size)), s) > mul_ck(p, n);
    rep.covering_conclusion =
        rep.k_min.has_value() && *rep.k_min <= rep.twelve_k;
    rep.cube_iter_conclusion =
        iterate_product(cube, rep.four_k).size() == rep.gen_order;
    return rep;
}

}  // namespace fpe
