#include "doctest.h"
#include "setlab/constructions.hpp"
#include "setlab/errors.hpp"
#include "setlab/set_mapping.hpp"

using namespace setlab;

TEST_CASE("absent tuples have empty images") {
  SetMapping f(6, 2);
  CHECK(f.image({0, 1}).empty());
  CHECK(f.images().empty());
  f.set_image({0, 1}, ElementSet{3});
  CHECK(f.image({1, 0}) == ElementSet{3});  // unordered lookup
  f.set_image({0, 1}, ElementSet{});        // erasing keeps storage canonical
  CHECK(f.images().empty());
}

TEST_CASE("disjointness is enforced on every write") {
  SetMapping f(6, 2);
  CHECK_THROWS_AS(f.set_image({0, 1}, ElementSet{1, 3}), invariant_error);
  CHECK_THROWS_AS(f.set_image({0, 0}, ElementSet{2}), invariant_error);
  CHECK_THROWS_AS(f.set_image({0, 7}, ElementSet{2}), invariant_error);
  CHECK_THROWS_AS(f.set_image({0, 1}, ElementSet{6}), invariant_error);
}

TEST_CASE("image budget bounds sizes strictly") {
  SetMapping f(7, 2, 2);
  f.set_image({0, 1}, ElementSet{4});
  CHECK_THROWS_AS(f.set_image({0, 1}, ElementSet{4, 5}), invariant_error);
  CHECK(*f.budget() == 2);
}

TEST_CASE("interval_bounded flag keeps quadruple images inside (x1, x2)") {
  SetMapping f(10, 4, std::nullopt, {.interval_bounded = true});
  f.set_image({0, 1, 4, 5}, ElementSet{2, 3});
  CHECK_THROWS_AS(f.set_image({0, 1, 4, 5}, ElementSet{6}), invariant_error);
  CHECK_THROWS_AS(f.set_image({0, 2, 4, 5}, ElementSet{1}), invariant_error);
  CHECK_THROWS_AS(SetMapping(10, 2, std::nullopt, {.interval_bounded = true}),
                  invariant_error);
}

TEST_CASE("initial_segment flag keeps pair images below the low element") {
  SetMapping f(6, 2, std::nullopt, {.initial_segment = true});
  f.set_image({2, 4}, ElementSet{0, 1});
  CHECK_THROWS_AS(f.set_image({2, 4}, ElementSet{3}), invariant_error);
  CHECK_THROWS_AS(SetMapping(6, 4, std::nullopt, {.initial_segment = true}),
                  invariant_error);
}

TEST_CASE("constructor validates its parameters") {
  CHECK_THROWS_AS(SetMapping(0, 2), invariant_error);
  CHECK_THROWS_AS(SetMapping(5, 0), invariant_error);
  CHECK_THROWS_AS(SetMapping(5, 2, 0), invariant_error);
  SetMapping tiny(1, 2);  // arity above ground size is legal: no tuples exist
  CHECK(tiny.images().empty());
}

TEST_CASE("interval mapping formula values") {
  SetMapping f = interval_mapping(6);
  CHECK(f.image({0, 2, 4, 5}) == ElementSet{3});
  CHECK(f.image({0, 1, 2, 3}).empty());
  CHECK(f.flags().interval_bounded);
}

TEST_CASE("prefix mapping formula values") {
  SetMapping f = prefix_mapping(4);
  CHECK(f.image({2, 3}) == ElementSet{0, 1});
  CHECK(f.image({0, 3}).empty());
  CHECK(f.flags().initial_segment);
}

TEST_CASE("shape comparison and pointwise containment") {
  SetMapping a(6, 2);
  SetMapping b(6, 2);
  CHECK(a.same_shape(b));
  CHECK(!a.same_shape(SetMapping(6, 4)));
  CHECK(!a.same_shape(SetMapping(6, 2, 3)));

  a.set_image({0, 1}, ElementSet{2});
  b.set_image({0, 1}, ElementSet{2, 3});
  CHECK(a.contained_in(b));
  CHECK(!b.contained_in(a));
  b.set_image({2, 3}, ElementSet{5});
  CHECK(a.contained_in(b));
}

TEST_CASE("restriction keeps tuples inside the domain") {
  SetMapping f(8, 2);
  f.set_image({0, 1}, ElementSet{5});
  f.set_image({0, 2}, ElementSet{3});
  f.set_image({4, 5}, ElementSet{0});

  SetMapping r = f.restricted_to(ElementSet{0, 1, 2, 3});
  CHECK(r.image({0, 1}) == ElementSet{5});  // images untouched by default
  CHECK(r.image({0, 2}) == ElementSet{3});
  CHECK(r.image({4, 5}).empty());

  SetMapping t = f.restricted_to(ElementSet{0, 1, 2, 3}, /*trim_images=*/true);
  CHECK(t.image({0, 1}).empty());  // 5 falls outside the domain
  CHECK(t.image({0, 2}) == ElementSet{3});
}

TEST_CASE("equality is structural") {
  SetMapping a(5, 2);
  SetMapping b(5, 2);
  CHECK(a == b);
  a.set_image({0, 1}, ElementSet{2});
  CHECK(a != b);
  b.set_image({0, 1}, ElementSet{2});
  CHECK(a == b);
}
