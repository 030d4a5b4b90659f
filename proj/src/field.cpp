#include "fpe/field.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fpe {

bool is_prime(uint32_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (uint32_t d = 3; uint64_t(d) * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

static std::vector<uint32_t> divisors_of(uint32_t n) {
    std::vector<uint32_t> divs;
    for (uint32_t d = 1; uint64_t(d) * d <= n; ++d) {
        if (n % d == 0) {
            divs.push_back(d);
            if (d != n / d) divs.push_back(n / d);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

PrimeField::PrimeField(uint32_t p) : p_(p) {
    divisors_ = divisors_of(p - 1);

    // smallest generator: order of g is p-1 iff g^((p-1)/q) != 1 for
    // every prime q | p-1
    std::vector<uint32_t> prime_factors;
    {
        uint32_t m = p - 1;
        for (uint32_t q = 2; uint64_t(q) * q <= m; ++q) {
            if (m % q == 0) {
                prime_factors.push_back(q);
                while (m % q == 0) m /= q;
            }
        }
        if (m > 1) prime_factors.push_back(m);
    }
    g_ = 0;
    for (uint32_t cand = 2; cand < p; ++cand) {
        bool ok = true;
        for (uint32_t q : prime_factors) {
            if (pow(cand, (p - 1) / q) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            g_ = cand;
            break;
        }
    }

    exp_.assign(p - 1, 0);
    dlog_.assign(p, 0);
    uint32_t x = 1;
    for (uint32_t e = 0; e < p - 1; ++e) {
        exp_[e] = x;
        dlog_[x] = e;
        x = mul(x, g_);
    }
}

uint32_t PrimeField::dlog(uint32_t x) const {
    if (x == 0 || x >= p_)
        throw std::invalid_argument("dlog: argument must lie in [1, p-1]");
    return dlog_[x];
}

uint32_t PrimeField::pow(uint32_t a, uint64_t e) const {
    uint64_t base = a % p_, r = 1;
    while (e > 0) {
        if (e & 1) r = r * base % p_;
        base = base * base % p_;
        e >>= 1;
    }
    return uint32_t(r);
}

uint32_t PrimeField::inv(uint32_t a) const {
    if (a == 0) throw std::invalid_argument("inv: 0 has no multiplicative inverse");
    return pow(a, p_ - 2);
}

Subgroup PrimeField::subgroup_of_order(uint32_t d) const {
    if (d == 0 || (p_ - 1) % d != 0)
        throw std::invalid_argument("subgroup order " + std::to_string(d) +
                                    " does not divide p-1 = " + std::to_string(p_ - 1));
    Subgroup h;
    h.order = d;
    h.elements.reserve(d);
    uint32_t step = (p_ - 1) / d;
    for (uint32_t k = 0; k < d; ++k) h.elements.push_back(exp_[uint64_t(k) * step % (p_ - 1)]);
    std::sort(h.elements.begin(), h.elements.end());
    return h;
}

FieldPtr make_field(uint32_t p) {
    if (p < 3) throw std::invalid_argument("modulus must be at least 3, got " + std::to_string(p));
    if (p > kMaxFieldPrime)
        throw std::invalid_argument("modulus " + std::to_string(p) + " exceeds supported limit " +
                                    std::to_string(kMaxFieldPrime));
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    return FieldPtr(new PrimeField(p));
}

}  // namespace fpe
