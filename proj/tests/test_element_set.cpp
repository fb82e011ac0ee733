#include <vector>

#include "doctest.h"
#include "setlab/element_set.hpp"

using namespace setlab;

TEST_CASE("construction sorts and deduplicates") {
  ElementSet s{3, 1, 3, 0};
  CHECK(s.elements() == std::vector<Element>{0, 1, 3});
  CHECK(s.size() == 3);
  CHECK(ElementSet{}.empty());
  CHECK(ElementSet(std::vector<Element>{2, 2, 2}).size() == 1);
}

TEST_CASE("range and masks") {
  CHECK(ElementSet::range(4) == ElementSet{0, 1, 2, 3});
  CHECK(ElementSet::range(0).empty());
  CHECK(ElementSet::from_mask(0b1011) == ElementSet{0, 1, 3});
  CHECK(ElementSet{0, 1, 3}.to_mask() == 0b1011);
  CHECK(ElementSet::from_mask(0).empty());
  ElementSet big{0, 5, 63};
  CHECK(ElementSet::from_mask(big.to_mask()) == big);
}

TEST_CASE("membership and ordering accessors") {
  ElementSet s{0, 2, 5};
  CHECK(s.contains(2));
  CHECK(!s.contains(3));
  CHECK(s.min() == 0);
  CHECK(s.max() == 5);
  CHECK(s[1] == 2);
}

TEST_CASE("set algebra") {
  ElementSet a{0, 1, 2};
  ElementSet b{2, 3};
  CHECK(a.set_union(b) == ElementSet{0, 1, 2, 3});
  CHECK(a.set_intersection(b) == ElementSet{2});
  CHECK(a.set_difference(b) == ElementSet{0, 1});
  CHECK(a.intersects(b));
  CHECK(!a.intersects(ElementSet{4}));
  CHECK(ElementSet{1, 2}.subset_of(a));
  CHECK(!b.subset_of(a));
  CHECK(a.with(5) == ElementSet{0, 1, 2, 5});
  CHECK(a.with(1) == a);
  CHECK(a.prefix(2) == ElementSet{0, 1});
  CHECK(a.prefix(0).empty());
}

TEST_CASE("lexicographic comparison over element sequences") {
  CHECK(ElementSet{0, 1} < ElementSet{0, 2});
  CHECK(ElementSet{0} < ElementSet{0, 1});
  CHECK(ElementSet{1} > ElementSet{0, 9});
}

TEST_CASE("rendering") {
  CHECK(ElementSet{0, 2, 5}.to_string() == "{0, 2, 5}");
  CHECK(ElementSet{}.to_string() == "{}");
  std::vector<Element> t{0, 1, 3, 4};
  CHECK(tuple_to_string(t) == "(0, 1, 3, 4)");
}
