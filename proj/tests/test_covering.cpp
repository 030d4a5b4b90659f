#include "doctest.h"

#include "fpe/covering.hpp"
#include "fpe/energy.hpp"
#include "oracles.hpp"

using namespace fpe;

TEST_CASE("generated_subgroup") {
    FieldPtr f = make_field(7);
    CHECK(generated_subgroup(FpSet::of(f, {1, 2, 4})).elements ==
          std::vector<uint32_t>{1, 2, 4});
    CHECK(generated_subgroup(FpSet::of(f, {3})).order == 6);
    CHECK(generated_subgroup(FpSet::of(f, {1})).order == 1);
}

TEST_CASE("generated_subgroup equals the stabilized power set when 1 in A") {
    FieldPtr f = make_field(31);
    for (uint64_t t = 0; t < 15; ++t) {
        FpSet A = oracle::random_subset(f, 17, t, 0.15, /*force_one=*/true);
        Subgroup g = generated_subgroup(A);
        FpSet cur = A;
        while (true) {
            FpSet next = productset(cur, A);
            if (next == cur) break;
            cur = next;
        }
        CHECK(cur == FpSet::from_subgroup(f, g));
    }
}

TEST_CASE("covering_exponent") {
    FieldPtr f = make_field(7);
    CHECK(covering_exponent(FpSet::of(f, {1, 3}), 10) == 5);
    // a subgroup covers itself immediately
    CHECK(covering_exponent(FpSet::of(f, {1, 2, 4}), 10) == 1);
    // without 1 a single element only cycles
    CHECK_FALSE(covering_exponent(FpSet::of(f, {2}), 50).has_value());
}

TEST_CASE("olson_bound") {
    FieldPtr f = make_field(7);
    CHECK(olson_bound(FpSet::of(f, {1, 3})) == 7);
    CHECK(olson_bound(FpSet::full_multiplicative_group(f)) == 3);
    CHECK(olson_bound(FpSet::of(f, {1, 2, 4})) == 3);
    CHECK_THROWS_AS(olson_bound(FpSet::of(f, {3})), std::invalid_argument);
}

TEST_CASE("covering exponent never exceeds the Olson bound (1 in A)") {
    for (uint32_t p : {7u, 11u, 13u, 31u, 61u, 101u}) {
        FieldPtr f = make_field(p);
        for (uint64_t t = 0; t < 20; ++t) {
            FpSet A = oracle::random_subset(f, 23, t, 0.25, /*force_one=*/true);
            int j = olson_bound(A);
            auto k = covering_exponent(A, j);
            REQUIRE(k.has_value());
            CHECK(*k <= j);
        }
    }
}

TEST_CASE("cube_lower_bound") {
    FieldPtr f = make_field(7);
    FpSet A = FpSet::of(f, {1, 2, 3});
    CHECK(cube_lower_bound(A) == Rat128(729, 143));
    CHECK(iterate_product(A, 3).size() == 6);
    // subgroups attain equality: d^6 / d^5 = d = |H^3|
    FieldPtr f31 = make_field(31);
    for (uint32_t d : f31->divisors()) {
        FpSet H = FpSet::from_subgroup(f31, f31->subgroup_of_order(d));
        CHECK(cube_lower_bound(H) == Rat128(d, 1));
        CHECK(iterate_product(H, 3).size() == d);
    }
    CHECK(cube_lower_bound(FpSet::of(f, {1})) == Rat128(1, 1));
}

TEST_CASE("cube bound in exact integers on random sets") {
    FieldPtr f = make_field(61);
    for (uint64_t t = 0; t < 25; ++t) {
        FpSet A = oracle::random_subset(f, 29, t, 0.3);
        if (A.empty()) continue;
        const u128 cube = iterate_product(A, 3).size();
        const u128 e3 = energy(A, 3, Kind::Multiplicative).value;
        CHECK(mul_ck(cube, e3) >= pow_ck(A.size(), 6));
    }
}

TEST_CASE("theorem51_report on the spec instances") {
    FieldPtr f7 = make_field(7);
    CoveringReport small = theorem51_report(FpSet::of(f7, {1, 2, 3}));
    CHECK(small.K == Rat128(5, 3));
    CHECK_FALSE(small.hyp_size);  // 81 * 5/3 = 135 < 343
    CHECK_FALSE(small.hypotheses_hold);
    CHECK(small.cube_energy_bound);

    CoveringReport full = theorem51_report(FpSet::full_multiplicative_group(f7));
    CHECK(full.K == Rat128(7, 6));
    CHECK(full.hypotheses_hold);
    CHECK(full.cube_conclusion);
    CHECK(full.covering_conclusion);
    CHECK(full.cube_iter_conclusion);
    CHECK(full.k_min == 1);

    // p = 1009, A = [1..200]: K = 399/200, hypotheses hold, both
    // conclusions verify
    FieldPtr f1009 = make_field(1009);
    FpSet interval = FpSet::mod_p(f1009);
    for (int64_t x = 1; x <= 200; ++x) interval.insert(x);
    CoveringReport big = theorem51_report(interval);
    CHECK(big.K == Rat128(399, 200));
    CHECK(big.hyp_size);
    CHECK(big.hypotheses_hold);
    CHECK(big.twelve_k == 24);  // ceil(12 * 399/200)
    CHECK(big.gen_order == 1008);
    CHECK(big.cube_size > 0);
    CHECK(big.cube_conclusion);
    CHECK(big.covering_conclusion);
    CHECK(big.cube_iter_conclusion);
    CHECK(big.cube_energy_bound);
    REQUIRE(big.k_min.has_value());
    CHECK(*big.k_min <= big.olson_j);
}

TEST_CASE("theorem51 conclusions verify whenever the hypotheses hold") {
    for (uint32_t p : {31u, 61u}) {
        FieldPtr f = make_field(p);
        for (uint64_t t = 0; t < 20; ++t) {
            FpSet A = oracle::random_subset(f, 41, t, 0.6, /*force_one=*/true);
            CoveringReport rep = theorem51_report(A);
            CHECK(rep.cube_energy_bound);
            if (rep.hypotheses_hold) {
                CHECK(rep.cube_conclusion);
                CHECK(rep.covering_conclusion);
                CHECK(rep.cube_iter_conclusion);
            }
        }
    }
}
