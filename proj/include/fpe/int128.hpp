#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace fpe {

// Exact counting arithmetic. Energies compare as integers, never floats,
// so every count lives in an unsigned 128-bit word with explicit overflow
// detection; an operation that would wrap throws instead.
using u128 = unsigned __int128;

inline constexpr u128 kU128Max = ~u128{0};

class OverflowError : public std::overflow_error {
public:
    explicit OverflowError(const std::string& what) : std::overflow_error(what) {}
};

inline u128 add_ck(u128 a, u128 b) {
    u128 r = a + b;
    if (r < a) throw OverflowError("128-bit addition overflow");
    return r;
}

inline u128 mul_ck(u128 a, u128 b) {
    // fast path: u64 * u64 cannot wrap a u128
    if ((a >> 64) == 0 && (b >> 64) == 0) return a * b;
    u128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("128-bit multiplication overflow");
    return r;
}

inline u128 pow_ck(u128 base, unsigned exp) {
    u128 r = 1;
    while (exp > 0) {
        if (exp & 1u) r = mul_ck(r, base);
        exp >>= 1u;
        if (exp > 0) base = mul_ck(base, base);
    }
    return r;
}

// true iff base^exp fits in 128 bits
inline bool pow_fits(u128 base, unsigned exp) {
    try {
        pow_ck(base, exp);
        return true;
    } catch (const OverflowError&) {
        return false;
    }
}

inline std::string u128_to_string(u128 v) {
    if (v == 0) return "0";
    char buf[48];
    int i = 48;
    while (v > 0) {
        buf[--i] = char('0' + int(v % 10));
        v /= 10;
    }
    return std::string(buf + i, buf + 48);
}

inline double u128_to_double(u128 v) {
    return double(v);
}

inline u128 gcd_u128(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Nonnegative exact rational, always stored reduced. Comparisons
// cross-multiply in checked 128-bit arithmetic.
struct Rat128 {
    u128 num = 0;
    u128 den = 1;

    Rat128() = default;
    Rat128(u128 n, u128 d) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("rational with zero denominator");
        reduce();
    }

    void reduce() {
        if (num == 0) {
            den = 1;
            return;
        }
        u128 g = gcd_u128(num, den);
        num /= g;
        den /= g;
    }

    double to_double() const { return double(num) / double(den); }

    bool operator==(const Rat128& o) const { return num == o.num && den == o.den; }
    bool operator<(const Rat128& o) const { return mul_ck(num, o.den) < mul_ck(o.num, den); }
    bool operator<=(const Rat128& o) const { return mul_ck(num, o.den) <= mul_ck(o.num, den); }
    bool operator>(const Rat128& o) const { return o < *this; }
    bool operator>=(const Rat128& o) const { return o <= *this; }

    // smallest integer >= c * (num/den)
    u128 ceil_times(u128 c) const {
        u128 t = mul_ck(c, num);
        return t / den + (t % den != 0 ? 1 : 0);
    }

    std::string to_string() const {
        return u128_to_string(num) + "/" + u128_to_string(den);
    }
};

}  // namespace fpe
