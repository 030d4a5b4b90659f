#include "fpe/sets.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fpe {

// ---------------------------------------------------------------- FpSet

FpSet FpSet::mod_p(FieldPtr field) {
    if (!field) throw std::invalid_argument("mod-p set requires a field");
    FpSet s;
    s.domain_ = Domain::ModP;
    s.field_ = std::move(field);
    s.lo_ = 0;
    s.hi_ = int64_t(s.field_->p()) - 1;
    s.bits_.assign(size_t(s.hi_ - s.lo_) / 64 + 1, 0);
    return s;
}

FpSet FpSet::interval(int64_t lo, int64_t hi) {
    if (lo > hi) throw std::invalid_argument("interval domain with lo > hi");
    FpSet s;
    s.domain_ = Domain::Interval;
    s.lo_ = lo;
    s.hi_ = hi;
    s.bits_.assign(size_t(hi - lo) / 64 + 1, 0);
    return s;
}

FpSet FpSet::of(FieldPtr field, std::initializer_list<int64_t> xs) {
    FpSet s = mod_p(std::move(field));
    for (int64_t x : xs) s.insert(x);
    return s;
}

FpSet FpSet::of_interval(int64_t lo, int64_t hi, std::initializer_list<int64_t> xs) {
    FpSet s = interval(lo, hi);
    for (int64_t x : xs) s.insert(x);
    return s;
}

FpSet FpSet::full_multiplicative_group(FieldPtr field) {
    FpSet s = mod_p(std::move(field));
    for (int64_t x = 1; x <= s.hi_; ++x) s.insert(x);
    return s;
}

FpSet FpSet::from_subgroup(FieldPtr field, const Subgroup& h) {
    FpSet s = mod_p(std::move(field));
    for (uint32_t x : h.elements) s.insert(x);
    return s;
}

const PrimeField& FpSet::field() const {
    if (!field_) throw std::logic_error("interval set has no field");
    return *field_;
}

uint32_t FpSet::modulus() const { return field().p(); }

void FpSet::insert(int64_t v) {
    if (v < lo_ || v > hi_)
        throw std::invalid_argument("element " + std::to_string(v) + " outside domain [" +
                                    std::to_string(lo_) + ", " + std::to_string(hi_) + "]");
    size_t i = size_t(v - lo_);
    uint64_t mask = uint64_t(1) << (i % 64);
    if (!(bits_[i / 64] & mask)) {
        bits_[i / 64] |= mask;
        ++size_;
    }
}

bool FpSet::contains(int64_t v) const {
    if (v < lo_ || v > hi_) return false;
    size_t i = size_t(v - lo_);
    return (bits_[i / 64] >> (i % 64)) & 1;
}

std::vector<int64_t> FpSet::elements() const {
    std::vector<int64_t> out;
    out.reserve(size_);
    for_each([&](int64_t v) { out.push_back(v); });
    return out;
}

bool FpSet::same_domain(const FpSet& o) const {
    if (domain_ != o.domain_) return false;
    if (domain_ == Domain::ModP) return field_->p() == o.field_->p();
    return lo_ == o.lo_ && hi_ == o.hi_;
}

bool FpSet::operator==(const FpSet& o) const {
    return same_domain(o) && size_ == o.size_ && bits_ == o.bits_;
}

// ------------------------------------------------------------- setops

static void require_no_zero(const FpSet& A, const char* op) {
    if (A.contains_zero())
        throw std::invalid_argument(std::string(op) +
                                    ": multiplicative structure undefined at 0");
}

std::vector<uint32_t> dlog_image(const PrimeField& field, const FpSet& A) {
    if (!A.is_mod_p() || A.field().p() != field.p())
        throw std::invalid_argument("dlog_image: set does not live in the given field");
    require_no_zero(A, "dlog_image");
    std::vector<uint32_t> out;
    out.reserve(A.size());
    A.for_each([&](int64_t a) { out.push_back(field.dlog(uint32_t(a))); });
    return out;
}

FpSet sumset(const FpSet& A, const FpSet& B) {
    if (!A.same_domain(B)) throw std::invalid_argument("sumset: mismatched domains");
    if (A.is_mod_p()) {
        const uint32_t p = A.modulus();
        FpSet out = FpSet::mod_p(A.field_ptr());
        A.for_each([&](int64_t a) {
            B.for_each([&](int64_t b) {
                int64_t s = a + b;
                out.insert(s >= p ? s - p : s);
            });
        });
        return out;
    }
    FpSet out = FpSet::interval(A.lo() + B.lo(), A.hi() + B.hi());
    A.for_each([&](int64_t a) { B.for_each([&](int64_t b) { out.insert(a + b); }); });
    return out;
}

FpSet productset(const FpSet& A, const FpSet& B) {
    if (!A.is_mod_p() || !B.is_mod_p() || !A.same_domain(B))
        throw std::invalid_argument("productset: requires two mod-p sets over the same prime");
    require_no_zero(A, "productset");
    require_no_zero(B, "productset");
    const uint32_t p = A.modulus();
    FpSet out = FpSet::mod_p(A.field_ptr());
    A.for_each([&](int64_t a) {
        B.for_each([&](int64_t b) { out.insert(int64_t(uint64_t(a) * uint64_t(b) % p)); });
    });
    return out;
}

FpSet iterate_product(const FpSet& A, int k) {
    if (!A.is_mod_p()) throw std::invalid_argument("iterate_product: requires a mod-p set");
    require_no_zero(A, "iterate_product");
    if (k < 0) throw std::invalid_argument("iterate_product: negative exponent");
    if (k == 0) {
        // empty product convention
        FpSet one = FpSet::mod_p(A.field_ptr());
        one.insert(1);
        return one;
    }
    FpSet acc = A;
    for (int i = 1; i < k; ++i) acc = productset(acc, A);
    return acc;
}

// ------------------------------------------------------- rep functions

static std::vector<size_t> nonzero_indices(const std::vector<u128>& v) {
    std::vector<size_t> idx;
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) idx.push_back(i);
    return idx;
}

std::vector<u128> cyclic_convolve(const std::vector<u128>& a, const std::vector<u128>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("cyclic_convolve: length mismatch");
    const size_t m = a.size();
    const std::vector<size_t> nb = nonzero_indices(b);
    std::vector<u128> c(m, 0);
    for (size_t i = 0; i < m; ++i) {
        if (a[i] == 0) continue;
        for (size_t j : nb) {
            size_t t = i + j;
            if (t >= m) t -= m;
            c[t] = add_ck(c[t], mul_ck(a[i], b[j]));
        }
    }
    return c;
}

// linear convolution; result index t carries sum over i+j = t
static std::vector<u128> linear_convolve(const std::vector<u128>& a, const std::vector<u128>& b) {
    const std::vector<size_t> nb = nonzero_indices(b);
    std::vector<u128> c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j : nb) c[i + j] = add_ck(c[i + j], mul_ck(a[i], b[j]));
    }
    return c;
}

u128 RepFunction::at(int64_t value) const {
    int64_t idx = value - offset;
    if (idx < 0 || size_t(idx) >= counts.size()) return 0;
    return counts[size_t(idx)];
}

u128 RepFunction::mass() const {
    u128 m = 0;
    for (u128 c : counts) m = add_ck(m, c);
    return m;
}

u128 RepFunction::sum_of_squares() const {
    u128 s = 0;
    for (u128 c : counts)
        if (c != 0) s = add_ck(s, mul_ck(c, c));
    return s;
}

FpSet RepFunction::support() const {
    FpSet out = domain == FpSet::Domain::ModP
                    ? FpSet::mod_p(field)
                    : FpSet::interval(offset, offset + int64_t(counts.size()) - 1);
    for (size_t i = 0; i < counts.size(); ++i)
        if (counts[i] != 0) out.insert(offset + int64_t(i));
    return out;
}

RepFunction rep_function(const FpSet& A, int k, Kind kind) {
    if (k < 1) throw std::invalid_argument("rep_function: k must be at least 1");
    if (kind == Kind::Multiplicative) {
        if (!A.is_mod_p())
            throw std::invalid_argument("rep_function: multiplicative kind requires a mod-p set");
        require_no_zero(A, "rep_function");
    }
    // refuse inputs whose counts could wrap: mass is |A|^k
    if (!pow_fits(A.size(), unsigned(k)))
        throw OverflowError("rep_function: |A|^k exceeds the exact 128-bit range");

    RepFunction rf;
    rf.kind = kind;
    rf.k = k;
    rf.domain = A.domain();
    rf.field = A.field_ptr();

    if (A.domain() == FpSet::Domain::Interval) {
        if (kind != Kind::Additive)
            throw std::invalid_argument("rep_function: interval sets only support additive kind");
        std::vector<u128> base(size_t(A.hi() - A.lo()) + 1, 0);
        A.for_each([&](int64_t v) { base[size_t(v - A.lo())] = 1; });
        std::vector<u128> acc = base;
        for (int i = 1; i < k; ++i) acc = linear_convolve(acc, base);
        rf.offset = A.lo() * k;
        rf.counts = std::move(acc);
        return rf;
    }

    const uint32_t p = A.modulus();
    if (kind == Kind::Additive) {
        std::vector<u128> base(p, 0);
        A.for_each([&](int64_t v) { base[size_t(v)] = 1; });
        std::vector<u128> acc = base;
        for (int i = 1; i < k; ++i) acc = cyclic_convolve(acc, base);
        rf.counts = std::move(acc);
        return rf;
    }

    // multiplicative: translate through dlog to Z_{p-1}, convolve there,
    // map the exponent counts back to residues
    const PrimeField& field = A.field();
    std::vector<u128> base(p - 1, 0);
    for (uint32_t e : dlog_image(field, A)) base[e] = 1;
    std::vector<u128> acc = base;
    for (int i = 1; i < k; ++i) acc = cyclic_convolve(acc, base);
    rf.counts.assign(p, 0);
    for (uint32_t e = 0; e + 1 < p; ++e) rf.counts[field.gpow(e)] = acc[e];
    return rf;
}

}  // namespace fpe
