#include "fpe/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fpe {

Spectrum dft(const PrimeField& field, const std::vector<double>& values) {
    const uint32_t p = field.p();
    if (p > kDftLimit)
        throw std::invalid_argument("dft: p = " + std::to_string(p) + " exceeds the direct-sum limit " +
                                    std::to_string(kDftLimit) +
                                    "; use the convolution-only workflow");
    if (values.size() != p) throw std::invalid_argument("dft: input must have p entries");

    Spectrum s;
    s.coef.assign(p, {0.0, 0.0});
    const double tau = 2.0 * std::numbers::pi / double(p);
    for (uint32_t r = 0; r < p; ++r) {
        std::complex<double> acc{0.0, 0.0};
        for (uint32_t x = 0; x < p; ++x) {
            if (values[x] == 0.0) continue;
            double ang = tau * double(uint64_t(r) * x % p);
            acc += values[x] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        s.coef[r] = acc;
    }
    for (double v : values) s.source_mass += v * v;
    return s;
}

Spectrum dft_indicator(const FpSet& A) {
    if (!A.is_mod_p()) throw std::invalid_argument("dft_indicator: requires a mod-p set");
    std::vector<double> values(A.modulus(), 0.0);
    A.for_each([&](int64_t x) { values[size_t(x)] = 1.0; });
    Spectrum s = dft(A.field(), values);
    s.source_mass = double(A.size());
    return s;
}

double plancherel_residual(const Spectrum& s, uint32_t p) {
    double total = 0;
    for (const auto& c : s.coef) total += std::norm(c);
    return std::abs(total - double(p) * s.source_mass);
}

std::vector<u128> quintuple_weights(const FpSet& A) {
    if (!A.is_mod_p()) throw std::invalid_argument("quintuple_weights: requires a mod-p set");
    if (A.contains_zero())
        throw std::invalid_argument("quintuple_weights: multiplicative structure undefined at 0");
    const PrimeField& field = A.field();
    const uint32_t p = field.p();
    const uint32_t m = p - 1;

    std::vector<u128> base(m, 0);
    for (uint32_t e : dlog_image(field, A)) base[e] = 1;
    std::vector<u128> q2 = cyclic_convolve(base, base);
    std::vector<u128> q3 = cyclic_convolve(q2, base);
    // (y1·y2)⁻¹ negates the exponent, so the pair counts reverse
    std::vector<u128> q2inv(m, 0);
    for (uint32_t e = 0; e < m; ++e) q2inv[(m - e) % m] = q2[e];
    std::vector<u128> w_exp = cyclic_convolve(q3, q2inv);

    std::vector<u128> w(p, 0);
    for (uint32_t e = 0; e < m; ++e) w[field.gpow(e)] = w_exp[e];
    return w;
}

namespace {

double t_from_weights(const PrimeField& field, const std::vector<u128>& w, uint32_t r) {
    const uint32_t p = field.p();
    const double tau = 2.0 * std::numbers::pi / double(p);
    std::complex<double> acc{0.0, 0.0};
    for (uint32_t u = 1; u < p; ++u) {
        if (w[u] == 0) continue;
        double ang = tau * double(uint64_t(r) * u % p);
        acc += double(w[u]) * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return std::abs(acc);
}

}  // namespace

double t_sum(const FpSet& A, uint32_t r) {
    if (r == 0 || r >= A.modulus())
        throw std::invalid_argument("t_sum: r must be a nonzero residue");
    return t_from_weights(A.field(), quintuple_weights(A), r);
}

std::pair<uint32_t, double> max_t(const FpSet& A) {
    const std::vector<u128> w = quintuple_weights(A);
    const PrimeField& field = A.field();
    uint32_t best_r = 1;
    double best = -1.0;
    for (uint32_t r = 1; r < field.p(); ++r) {
        double t = t_from_weights(field, w, r);
        if (t > best) {
            best = t;
            best_r = r;
        }
    }
    return {best_r, best};
}

}  // namespace fpe
