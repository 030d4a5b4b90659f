#pragma once

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <vector>

#include "fpe/field.hpp"
#include "fpe/int128.hpp"

namespace fpe {

enum class Kind { Additive, Multiplicative };

/// A finite set either of residues mod p (with an attached PrimeField)
/// or of integers in an interval [lo, hi]. Membership is bit-indexed;
/// the cardinality is kept in sync with the bits.
class FpSet {
public:
    enum class Domain { ModP, Interval };

    static FpSet mod_p(FieldPtr field);
    static FpSet interval(int64_t lo, int64_t hi);
    static FpSet of(FieldPtr field, std::initializer_list<int64_t> xs);
    static FpSet of_interval(int64_t lo, int64_t hi, std::initializer_list<int64_t> xs);
    static FpSet full_multiplicative_group(FieldPtr field);  // F_p^* = {1,...,p-1}
    static FpSet from_subgroup(FieldPtr field, const Subgroup& h);

    Domain domain() const { return domain_; }
    bool is_mod_p() const { return domain_ == Domain::ModP; }
    const FieldPtr& field_ptr() const { return field_; }
    const PrimeField& field() const;
    uint32_t modulus() const;  // ModP only
    int64_t lo() const { return lo_; }
    int64_t hi() const { return hi_; }

    void insert(int64_t v);
    bool contains(int64_t v) const;
    size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }
    bool contains_zero() const { return is_mod_p() && contains(0); }

    std::vector<int64_t> elements() const;  // ascending

    template <class F>
    void for_each(F&& f) const {
        for (size_t w = 0; w < bits_.size(); ++w) {
            uint64_t word = bits_[w];
            while (word != 0) {
                unsigned b = unsigned(__builtin_ctzll(word));
                word &= word - 1;
                f(int64_t(w * 64 + b) + lo_);
            }
        }
    }

    bool same_domain(const FpSet& o) const;
    bool operator==(const FpSet& o) const;

private:
    FpSet() = default;
    Domain domain_ = Domain::Interval;
    FieldPtr field_;           // ModP
    int64_t lo_ = 0, hi_ = 0;  // value range; ModP uses [0, p-1]
    std::vector<uint64_t> bits_;
    size_t size_ = 0;
};

/// Exact representation counts: the number of ordered k-tuples from A
/// whose sum (r_k) or product (q_k) equals each ambient value.
/// Invariants: sum of counts == |A|^k; every count <= |A|^(k-1).
struct RepFunction {
    Kind kind;
    int k;
    FpSet::Domain domain;
    FieldPtr field;             // ModP
    int64_t offset = 0;         // Interval: counts[i] is the count at value offset+i
    std::vector<u128> counts;   // ModP: indexed by residue

    u128 at(int64_t value) const;
    u128 mass() const;          // checked sum of counts
    u128 sum_of_squares() const;
    FpSet support() const;
};

// {dlog(a) : a in A}; rejects 0 (multiplicative structure undefined at 0)
std::vector<uint32_t> dlog_image(const PrimeField& field, const FpSet& A);

FpSet sumset(const FpSet& A, const FpSet& B);
FpSet productset(const FpSet& A, const FpSet& B);  // mod-p, 0 excluded

// A^k, k-fold product set; k = 0 gives {1} (empty product)
FpSet iterate_product(const FpSet& A, int k);

/// Exact r_k / q_k by (k-1) exact convolutions: cyclic over Z_p for
/// additive mod-p, cyclic over Z_{p-1} through the dlog map for
/// multiplicative, linear for interval sets.
RepFunction rep_function(const FpSet& A, int k, Kind kind);

// schoolbook exact cyclic convolution, the validation reference for
// every faster path
std::vector<u128> cyclic_convolve(const std::vector<u128>& a, const std::vector<u128>& b);

}  // namespace fpe
