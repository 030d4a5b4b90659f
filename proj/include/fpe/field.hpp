#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace fpe {

class PrimeField;
using FieldPtr = std::shared_ptr<const PrimeField>;

/// The multiplicative subgroup of order `order` (a divisor of p-1),
/// with its elements listed in increasing order.
struct Subgroup {
    uint32_t order;
    std::vector<uint32_t> elements;
};

/// Prime field F_p with the full multiplicative-group structure
/// precomputed: smallest generator g, the table x -> dlog(x) with
/// g^dlog(x) = x, its inverse table, and the divisors of p-1.
///
/// Immutable after construction; safe to share across threads.
class PrimeField {
public:
    uint32_t p() const { return p_; }
    uint32_t generator() const { return g_; }

    // dlog(x) in [0, p-2] for x in [1, p-1]; rejects 0
    uint32_t dlog(uint32_t x) const;

    // g^e for e in [0, p-2]
    uint32_t gpow(uint32_t e) const { return exp_[e]; }

    const std::vector<uint32_t>& divisors() const { return divisors_; }

    uint32_t add(uint32_t a, uint32_t b) const {
        uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
    uint32_t mul(uint32_t a, uint32_t b) const {
        return uint32_t(uint64_t(a) * b % p_);
    }
    uint32_t pow(uint32_t a, uint64_t e) const;
    uint32_t inv(uint32_t a) const;  // rejects 0

    // the unique subgroup of order d, for d | p-1
    Subgroup subgroup_of_order(uint32_t d) const;

private:
    friend FieldPtr make_field(uint32_t p);
    explicit PrimeField(uint32_t p);

    uint32_t p_;
    uint32_t g_;
    std::vector<uint32_t> dlog_;      // dlog_[x], slot 0 unused
    std::vector<uint32_t> exp_;       // exp_[e] = g^e, e in [0, p-2]
    std::vector<uint32_t> divisors_;  // of p-1, sorted
};

// largest supported modulus; dlog/exp tables are O(p) memory
inline constexpr uint32_t kMaxFieldPrime = 4'000'000;

/// Builds F_p for a prime 3 <= p <= kMaxFieldPrime. Rejects composite
/// or out-of-range moduli with a diagnostic.
FieldPtr make_field(uint32_t p);

bool is_prime(uint32_t n);

}  // namespace fpe
