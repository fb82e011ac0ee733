#include <bit>

#include "doctest.h"
#include "setlab/constructions.hpp"
#include "setlab/corpus.hpp"
#include "setlab/errors.hpp"
#include "setlab/predicates.hpp"

using namespace setlab;

TEST_CASE("is_free on the interval mapping") {
  SetMapping f = interval_mapping(6);
  CHECK(is_free(f, ElementSet{0, 1, 2, 3}));
  CHECK(!is_free(f, ElementSet{0, 1, 2, 3, 4}));  // {0,1,3,4} maps onto 2
  CHECK(is_free(f, ElementSet{}));
  CHECK(is_free(f, ElementSet{2, 3, 4, 5}));  // any 4-set: disjointness
  CHECK_THROWS_AS(is_free(f, ElementSet{0, 9}), invariant_error);
}

TEST_CASE("is_chain_closed") {
  SetMapping interval = interval_mapping(8);
  CHECK(is_chain_closed(interval, ElementSet{0, 1, 2, 3, 4}));
  CHECK(is_chain_closed(interval, ElementSet{1, 3, 4, 6, 7}));
  CHECK(is_chain_closed(interval, ElementSet::range(8)));
  CHECK(is_chain_closed(interval, ElementSet{0, 1}));  // no chains: vacuous

  SetMapping prefix = prefix_mapping(5);
  CHECK(is_chain_closed(prefix, ElementSet::range(5)));
  CHECK(is_chain_closed(prefix, ElementSet{1, 3, 4}));

  SetMapping empty(5, 2);
  CHECK(!is_chain_closed(empty, ElementSet{0, 1, 2}));

  SetMapping triple(5, 3);
  CHECK_THROWS_AS(is_chain_closed(triple, ElementSet{0, 1, 2}), usage_error);
}

TEST_CASE("is_chain_free") {
  SetMapping g(6, 4);
  CHECK(is_chain_free(g, ElementSet::range(6)));  // empty mapping
  g.set_image({0, 1, 3, 4}, ElementSet{2});
  CHECK(!is_chain_free(g, ElementSet{0, 1, 2, 3, 4}));
  CHECK(is_chain_free(g, ElementSet{0, 1, 3, 4}));  // no 5-chain exists

  SetMapping h(5, 2);
  h.set_image({3, 4}, ElementSet{1});
  CHECK(!is_chain_free(h, ElementSet{1, 3, 4}));
  CHECK(is_chain_free(h, ElementSet{0, 3, 4}));
}

TEST_CASE("is_secured") {
  SetMapping F = prefix_mapping(4);
  SetMapping g(4, 2);
  CHECK(is_secured(F, g, ElementSet{0, 1, 2}));
  CHECK(!is_secured(F, g, ElementSet{0, 1}));  // size below three
  g.set_image({1, 2}, ElementSet{0});
  CHECK(!is_secured(F, g, ElementSet{0, 1, 2}));  // no longer chain-free
}

TEST_CASE("reduced_free agrees with is_free where the flags hold") {
  SetMapping interval = interval_mapping(6);
  CHECK(!reduced_free(interval, ElementSet{0, 1, 2, 3, 4}));
  CHECK(reduced_free(interval, ElementSet{0, 1, 2, 3}));

  SetMapping f(4, 2, std::nullopt, {.initial_segment = true});
  f.set_image({1, 2}, ElementSet{0});
  f.set_image({1, 3}, ElementSet{0});
  f.set_image({2, 3}, ElementSet{0});
  CHECK(reduced_free(f, ElementSet{1, 2, 3}));
  CHECK(is_free(f, ElementSet{1, 2, 3}));
  CHECK(!reduced_free(f, ElementSet{0, 2, 3}));

  SetMapping unflagged(6, 4);
  CHECK_THROWS_AS(reduced_free(unflagged, ElementSet{0, 1, 2, 3}), usage_error);
}

TEST_CASE("freeness is antitone in the subset order") {
  SetMapping f = random_mapping(9, 2, std::nullopt, {}, 0x5eedULL);
  for (std::uint64_t mask = 0; mask < (1u << 9); ++mask) {
    ElementSet h = ElementSet::from_mask(mask);
    if (!is_free(f, h)) continue;
    for (int drop = 0; drop < h.size(); ++drop) {
      ElementSet smaller =
          h.set_difference(ElementSet{h[drop]});
      CHECK(is_free(f, smaller));
    }
  }
}

TEST_CASE("chain predicates with full structural images are constant") {
  // Interval mapping images fill the whole legal range, so every set is
  // chain-closed; the empty mapping is chain-free everywhere.
  SetMapping interval = interval_mapping(9);
  SetMapping none(9, 4);
  for (std::uint64_t mask = 0; mask < (1u << 9); ++mask) {
    if (std::popcount(mask) < 5) continue;
    ElementSet u = ElementSet::from_mask(mask);
    CHECK(is_chain_closed(interval, u));
    CHECK(is_chain_free(none, u));
  }
}
