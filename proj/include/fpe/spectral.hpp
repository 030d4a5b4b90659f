#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "fpe/int128.hpp"
#include "fpe/sets.hpp"

namespace fpe {

// the direct O(p^2) transform is the contract; beyond this limit use
// the convolution-only workflow
inline constexpr uint32_t kDftLimit = 4096;

/// Additive-character spectrum: coefficients f̂(r) = Σ_x f(x) e_p(rx)
/// for r in [0, p-1], with e_p(x) = exp(2πix/p).
struct Spectrum {
    std::vector<std::complex<double>> coef;
    double source_mass = 0;  // Σ_x f(x)^2; equals |A| for indicators
};

Spectrum dft(const PrimeField& field, const std::vector<double>& values);
Spectrum dft_indicator(const FpSet& A);

// | Σ_r |f̂(r)|² − p · source_mass |
double plancherel_residual(const Spectrum& s, uint32_t p);

/// Exact 5-tuple weights of the quintic form: w(u) = #{(x1,x2,x3,y1,y2)
/// in A^5 : x1·x2·x3·y1⁻¹·y2⁻¹ = u}, indexed by residue. Built from
/// q_3(A) and q_2(A) through the dlog map, never by direct enumeration.
std::vector<u128> quintuple_weights(const FpSet& A);

/// T(r) = |Σ w(u) e_p(ru)|, the exponential sum over all 5-tuples.
double t_sum(const FpSet& A, uint32_t r);

/// max over r in [1, p-1]; smallest arg-max r on exact ties.
std::pair<uint32_t, double> max_t(const FpSet& A);

}  // namespace fpe
