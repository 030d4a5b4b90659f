#include "doctest.h"

#include <algorithm>
#include <set>

#include "fpe/field.hpp"
#include "fpe/sets.hpp"

using namespace fpe;

TEST_CASE("make_field picks the smallest generator") {
    CHECK(make_field(7)->generator() == 3);  // 2 has order 3
    CHECK(make_field(3)->generator() == 2);
    CHECK(make_field(11)->generator() == 2);
    CHECK(make_field(13)->generator() == 2);
    CHECK(make_field(31)->generator() == 3);

    // exhaustive order check at small primes
    for (uint32_t p : {5u, 7u, 11u, 13u, 17u, 19u, 23u}) {
        FieldPtr f = make_field(p);
        uint32_t smallest = 0;
        for (uint32_t g = 2; g < p && smallest == 0; ++g) {
            uint32_t x = g, order = 1;
            while (x != 1) {
                x = uint32_t(uint64_t(x) * g % p);
                ++order;
            }
            if (order == p - 1) smallest = g;
        }
        CHECK(f->generator() == smallest);
    }
}

TEST_CASE("make_field rejects bad moduli") {
    CHECK_THROWS_AS(make_field(9), std::invalid_argument);
    CHECK_THROWS_AS(make_field(1), std::invalid_argument);
    CHECK_THROWS_AS(make_field(2), std::invalid_argument);
    CHECK_THROWS_AS(make_field(1000000), std::invalid_argument);  // composite
    CHECK_THROWS_AS(make_field(kMaxFieldPrime + 7), std::invalid_argument);
}

TEST_CASE("dlog is the inverse of generator powers") {
    for (uint32_t p : {7u, 101u, 499u}) {
        FieldPtr f = make_field(p);
        std::set<uint32_t> image;
        for (uint32_t x = 1; x < p; ++x) {
            uint32_t e = f->dlog(x);
            CHECK(e <= p - 2);
            CHECK(f->pow(f->generator(), e) == x);
            image.insert(e);
        }
        CHECK(image.size() == p - 1);  // bijection onto [0, p-2]
    }
    CHECK_THROWS_AS(make_field(7)->dlog(0), std::invalid_argument);
}

TEST_CASE("dlog is a homomorphism") {
    FieldPtr f = make_field(101);
    for (uint32_t a = 1; a < 101; a += 7)
        for (uint32_t b = 1; b < 101; b += 5) {
            uint32_t lhs = f->dlog(f->mul(a, b));
            uint32_t rhs = (f->dlog(a) + f->dlog(b)) % 100;
            CHECK(lhs == rhs);
        }
}

TEST_CASE("subgroup_of_order matches the examples") {
    FieldPtr f = make_field(7);
    CHECK(f->subgroup_of_order(3).elements == std::vector<uint32_t>{1, 2, 4});
    CHECK(f->subgroup_of_order(1).elements == std::vector<uint32_t>{1});
    CHECK(f->subgroup_of_order(6).elements == std::vector<uint32_t>{1, 2, 3, 4, 5, 6});
    CHECK_THROWS_AS(f->subgroup_of_order(4), std::invalid_argument);
    CHECK_THROWS_AS(f->subgroup_of_order(0), std::invalid_argument);
}

TEST_CASE("subgroup lattice of F_31") {
    FieldPtr f = make_field(31);
    CHECK(f->divisors() == std::vector<uint32_t>{1, 2, 3, 5, 6, 10, 15, 30});
    for (uint32_t d : f->divisors()) {
        Subgroup h = f->subgroup_of_order(d);
        CHECK(h.elements.size() == d);
        CHECK(h.elements.front() == 1);  // identity present, elements sorted
        // closed under multiplication
        std::set<uint32_t> members(h.elements.begin(), h.elements.end());
        for (uint32_t a : h.elements)
            for (uint32_t b : h.elements) CHECK(members.count(f->mul(a, b)) == 1);
    }
    // containment along divisibility
    for (uint32_t d1 : f->divisors())
        for (uint32_t d2 : f->divisors()) {
            if (d2 % d1 != 0) continue;
            Subgroup h1 = f->subgroup_of_order(d1), h2 = f->subgroup_of_order(d2);
            CHECK(std::includes(h2.elements.begin(), h2.elements.end(), h1.elements.begin(),
                                h1.elements.end()));
        }
}

TEST_CASE("dlog_image") {
    FieldPtr f = make_field(7);
    CHECK(dlog_image(*f, FpSet::of(f, {1})) == std::vector<uint32_t>{0});
    CHECK(dlog_image(*f, FpSet::of(f, {3, 2})) == std::vector<uint32_t>{2, 1});  // ascending by element
    CHECK_THROWS_AS(dlog_image(*f, FpSet::of(f, {0, 1})), std::invalid_argument);

    // image of the full group is all of [0, p-2]
    std::vector<uint32_t> img = dlog_image(*f, FpSet::full_multiplicative_group(f));
    std::sort(img.begin(), img.end());
    CHECK(img == std::vector<uint32_t>{0, 1, 2, 3, 4, 5});
}
