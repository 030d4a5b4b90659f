#include "fpe/energy.hpp"

#include <stdexcept>
#include <string>

namespace fpe {

namespace {

// direct tally of all |A|^k ordered k-tuples, independent of the
// convolution kernel (no dlog transfer, no cyclic wrap tricks)
u128 brute_energy(const FpSet& A, int k, Kind kind) {
    const std::vector<int64_t> elems = A.elements();
    const size_t n = elems.size();

    std::vector<uint64_t> tally;
    int64_t offset = 0;
    uint32_t p = 0;
    if (A.is_mod_p()) {
        p = A.modulus();
        tally.assign(p, 0);
    } else {
        offset = A.lo() * k;
        tally.assign(size_t(A.hi() * int64_t(k) - offset) + 1, 0);
    }

    // depth-first over tuple positions with a running sum/product
    std::vector<size_t> idx(size_t(k), 0);
    std::vector<int64_t> run(size_t(k) + 1);
    run[0] = (kind == Kind::Multiplicative) ? 1 : 0;
    int depth = 0;
    while (depth >= 0) {
        if (idx[size_t(depth)] == n) {
            idx[size_t(depth)] = 0;
            --depth;
            if (depth >= 0) ++idx[size_t(depth)];
            continue;
        }
        int64_t x = elems[idx[size_t(depth)]];
        int64_t v;
        if (kind == Kind::Multiplicative) {
            v = int64_t(uint64_t(run[size_t(depth)]) * uint64_t(x) % p);
        } else if (A.is_mod_p()) {
            v = (run[size_t(depth)] + x) % p;
        } else {
            v = run[size_t(depth)] + x;
        }
        if (depth + 1 == k) {
            ++tally[size_t(v - (A.is_mod_p() ? 0 : offset))];
            ++idx[size_t(depth)];
        } else {
            run[size_t(depth) + 1] = v;
            ++depth;
        }
    }

    u128 e = 0;
    for (uint64_t c : tally)
        if (c != 0) e = add_ck(e, mul_ck(c, c));
    return e;
}

u128 convolution_energy(const FpSet& A, int k, Kind kind) {
    return rep_function(A, k, kind).sum_of_squares();
}

}  // namespace

EnergyValue energy(const FpSet& A, int k, Kind kind, Method method) {
    if (k < 2) throw std::invalid_argument("energy: k must be at least 2");
    if (kind == Kind::Multiplicative) {
        if (!A.is_mod_p())
            throw std::invalid_argument("energy: multiplicative kind requires a mod-p set");
        if (A.contains_zero())
            throw std::invalid_argument("energy: multiplicative structure undefined at 0");
    }
    if (A.empty()) return {0, k, kind, method == Method::Auto ? Method::Brute : method};
    if (!pow_fits(A.size(), unsigned(2 * k)))
        throw OverflowError("energy: |A|^(2k) exceeds the exact 128-bit range");

    const u128 square_tuples = pow_ck(A.size(), unsigned(2 * k));
    if (method == Method::Auto)
        method = square_tuples <= kAutoBruteThreshold ? Method::Brute : Method::Convolution;

    if (method == Method::Brute) {
        const u128 tuples = pow_ck(A.size(), unsigned(k));
        if (tuples > kBruteBudget)
            throw std::invalid_argument("energy: brute enumeration budget exceeded (" +
                                        u128_to_string(tuples) + " tuples)");
        return {brute_energy(A, k, kind), k, kind, Method::Brute};
    }
    return {convolution_energy(A, k, kind), k, kind, Method::Convolution};
}

std::vector<EnergyValue> energy_profile(const FpSet& A, int kmax, Kind kind) {
    if (kmax < 2) throw std::invalid_argument("energy_profile: kmax must be at least 2");
    std::vector<EnergyValue> out;
    out.reserve(size_t(kmax) - 1);
    for (int k = 2; k <= kmax; ++k) {
        EnergyValue ev = energy(A, k, kind, Method::Auto);
        // cross-check the independent paths whenever brute stays cheap
        if (!A.empty() && pow_fits(A.size(), unsigned(2 * k)) &&
            pow_ck(A.size(), unsigned(2 * k)) <= kAutoBruteThreshold) {
            EnergyValue conv = energy(A, k, kind, Method::Convolution);
            if (conv.value != ev.value)
                throw std::logic_error("energy_profile: brute and convolution disagree at k=" +
                                       std::to_string(k));
        }
        out.push_back(ev);
    }
    return out;
}

}  // namespace fpe
