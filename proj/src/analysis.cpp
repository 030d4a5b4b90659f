#include "fpe/analysis.hpp"

#include <cmath>
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

ExponentProfile exponent_profile(const FpSet& A) {
    require_mult_set(A, "exponent_profile");
    if (A.size() < 2) throw std::invalid_argument("exponent_profile: mu undefined for |A| <= 1");

    ExponentProfile pr;
    pr.p = A.modulus();
    pr.size = A.size();
    pr.sumset_size = sumset(A, A).size();
    pr.e3 = energy(A, 3, Kind::Multiplicative).value;
    pr.e4 = energy(A, 4, Kind::Multiplicative).value;

    const double logA = std::log(double(pr.size));
    pr.eta = logA / std::log(double(pr.p));
    pr.alpha = pr.eta;
    pr.mu = std::log(u128_to_double(pr.e3)) / logA;
    pr.varrho = std::log(double(pr.sumset_size)) / logA - 1.0;
    pr.ratio4_3 = Rat128(pr.e4, mul_ck(pr.size, pr.e3));
    pr.growth_stat = Rat128(pr.e3, mul_ck(mul_ck(pr.p, pr.size), pr.sumset_size));
    return pr;
}

Eq2Report check_eq2(const FpSet& A) {
    require_mult_set(A, "check_eq2");
    if (A.empty()) throw std::invalid_argument("check_eq2: empty set");

    const u128 p = A.modulus();
    const u128 n = A.size();
    const u128 s = sumset(A, A).size();
    const u128 e3 = energy(A, 3, Kind::Multiplicative).value;
    const u128 e4 = energy(A, 4, Kind::Multiplicative).value;

    Eq2Report rep;
    rep.lhs = e3;
    const u128 n5s = mul_ck(pow_ck(n, 5), s);
    rep.term1 = Rat128(n5s, p);
    const u128 term2_sq = mul_ck(mul_ck(p, s), e4);
    rep.term2 = std::sqrt(u128_to_double(term2_sq));

    // dominance: term1 vs term2 squared exactly; dividing the common
    // factor s leaves |A|^10 s vs p^3 e4
    const u128 d_lhs = mul_ck(pow_ck(n, 10), s);
    const u128 d_rhs = mul_ck(pow_ck(p, 3), e4);
    rep.dominant = d_lhs > d_rhs   ? Eq2Report::Dominant::First
                   : d_lhs < d_rhs ? Eq2Report::Dominant::Second
                                   : Eq2Report::Dominant::Balanced;

    // lhs <= term1 + term2, squaring only when the difference is positive
    const u128 p_lhs = mul_ck(p, e3);
    if (p_lhs <= n5s) {
        rep.holds = true;
    } else {
        const u128 diff = p_lhs - n5s;  // p*(lhs - term1)
        // (lhs - term1)^2 <= term2^2  <=>  diff^2 <= p^2 * p s e4
        rep.holds = mul_ck(diff, diff) <= mul_ck(mul_ck(p, p), term2_sq);
    }
    return rep;
}

bool in_region_U(const ExponentProfile& profile) {
    return profile.eta > 1.0 / 3.0 && profile.eta < 3.0 / 8.0 &&
           profile.mu > 113.0 / 24.0 && profile.mu < 5.0;
}

DominanceReport dominance_threshold(const FpSet& A) {
    require_mult_set(A, "dominance_threshold");
    DominanceReport rep;
    if (A.empty()) {
        rep.second_term_regime = true;  // 0 <= anything
        rep.eta_below_3_8 = true;
        return rep;
    }
    const u128 p = A.modulus();
    const u128 n = A.size();
    const u128 s = sumset(A, A).size();
    const u128 e4 = energy(A, 4, Kind::Multiplicative).value;
    rep.lhs = mul_ck(pow_ck(n, 10), s);
    rep.rhs = mul_ck(mul_ck(4, pow_ck(p, 3)), e4);
    rep.second_term_regime = rep.lhs <= rep.rhs;
    rep.eta_below_3_8 = pow_ck(n, 8) < pow_ck(p, 3);
    return rep;
}

}  // namespace fpe
