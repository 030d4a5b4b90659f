#include "doctest.h"

#include "fpe/setspec.hpp"

using namespace fpe;

TEST_CASE("set spec forms") {
    FieldPtr f = make_field(31);
    CHECK(parse_set_spec("list:1,5,9", f) == FpSet::of(f, {1, 5, 9}));
    CHECK(parse_set_spec("interval:3..6", f) == FpSet::of(f, {3, 4, 5, 6}));
    CHECK(parse_set_spec("geom:2,4", f) == FpSet::of(f, {1, 2, 4, 8}));
    CHECK(parse_set_spec("subgroup:5", f) ==
          FpSet::from_subgroup(f, f->subgroup_of_order(5)));

    FpSet r1 = parse_set_spec("random:0.4,99", f);
    FpSet r2 = parse_set_spec("random:0.4,99", f);
    CHECK(r1 == r2);
    CHECK_FALSE(r1.contains(0));  // drawn from F_p^*
}

TEST_CASE("set spec errors name the offending token") {
    FieldPtr f = make_field(31);
    CHECK_THROWS_AS(parse_set_spec("list:1,x,3", f), SetSpecError);
    CHECK_THROWS_AS(parse_set_spec("list:1,31", f), SetSpecError);
    CHECK_THROWS_AS(parse_set_spec("interval:5..2", f), SetSpecError);
    CHECK_THROWS_AS(parse_set_spec("geom:0,4", f), SetSpecError);
    CHECK_THROWS_AS(parse_set_spec("subgroup:7", f), SetSpecError);
    CHECK_THROWS_AS(parse_set_spec("random:1.5,2", f), SetSpecError);
    CHECK_THROWS_AS(parse_set_spec("wedge:1,2", f), SetSpecError);
    CHECK_THROWS_AS(parse_set_spec("justtext", f), SetSpecError);
    try {
        parse_set_spec("list:1,x,3", f);
    } catch (const SetSpecError& e) {
        CHECK(e.token() == "x");
    }
}

TEST_CASE("geom wraps through the group") {
    FieldPtr f = make_field(7);
    // 3 generates: powers 1,3,2,6,4,5 then repeat
    CHECK(parse_set_spec("geom:3,6", f) == FpSet::full_multiplicative_group(f));
    CHECK(parse_set_spec("geom:3,8", f) == FpSet::full_multiplicative_group(f));
}
