#include <cstdint>

#include "doctest.h"
#include "setlab/constructions.hpp"
#include "setlab/corpus.hpp"
#include "setlab/forcing.hpp"
#include "setlab/predicates.hpp"
#include "setlab/rng.hpp"

using namespace setlab;

TEST_CASE("random mappings are pure functions of their seed") {
  SetMapping a = random_mapping(9, 2, 3, {}, 0xdecafULL);
  SetMapping b = random_mapping(9, 2, 3, {}, 0xdecafULL);
  CHECK(a == b);
  SetMapping c = random_mapping(9, 2, 3, {}, 0xdecaf + 1ULL);
  CHECK(a != c);
}

TEST_CASE("random mappings honor shape, budget and flags") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    SetMapping f = random_mapping(10, 4, 3, {.interval_bounded = true},
                                  mix_seed(0xc0de, seed));
    CHECK(f.ground_size() == 10);
    CHECK(f.arity() == 4);
    REQUIRE(f.budget().has_value());
    CHECK(*f.budget() == 3);
    CHECK(f.flags().interval_bounded);
    for (const auto& [t, img] : f.images()) {
      CHECK(img.size() < 3);
      if (!img.empty()) {
        CHECK(img.min() > t[1]);
        CHECK(img.max() < t[2]);
      }
    }

    SetMapping g = random_mapping(8, 2, std::nullopt,
                                  {.initial_segment = true},
                                  mix_seed(0xc0de7, seed));
    for (const auto& [t, img] : g.images()) CHECK(img.max() < t[0]);
  }
}

TEST_CASE("quadruple delta instances satisfy every amalgamation premise") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    QuadDeltaInstance inst = random_quad_delta(mix_seed(0x9a4d, seed));
    CHECK(inst.ambient.arity() == 4);
    CHECK(inst.ambient.ground_size() >= 14);
    CHECK(inst.ambient.ground_size() <= 18);

    CHECK(check_quad_condition(inst.ambient, inst.left.support, inst.left.g)
              .valid);
    CHECK(check_quad_condition(inst.ambient, inst.right.support, inst.right.g)
              .valid);

    DeltaSystemPair split = make_delta_system_pair(
        inst.left.support, inst.left.g, inst.right.support, inst.right.g);
    CHECK(split.root ==
          inst.left.support.set_intersection(inst.right.support));
    CHECK(!split.left_branch.empty());
    CHECK(!split.right_branch.empty());
    CHECK(verify_delta_preconditions(split, inst.ambient));
  }
}

TEST_CASE("ranked delta instances satisfy every amalgamation premise") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    RankedDeltaInstance inst = random_ranked_delta(mix_seed(0x7a2b, seed));
    CHECK(inst.ambient.arity() == 2);
    CHECK(inst.ambient.ground_size() >= 12);
    CHECK(inst.ambient.ground_size() <= 16);

    CHECK(check_ranked_condition(inst.ambient, inst.left.support, inst.left.g,
                                 inst.left.rank)
              .valid);
    CHECK(check_ranked_condition(inst.ambient, inst.right.support,
                                 inst.right.g, inst.right.rank)
              .valid);

    DeltaSystemPair split = make_delta_system_pair(
        inst.left.support, inst.left.g, inst.right.support, inst.right.g);
    CHECK(verify_delta_preconditions(split, inst.ambient));

    // Root pairs must take ambient images clear of both branches.
    for (std::size_t i = 0; i + 1 < split.root.size(); ++i)
      for (std::size_t j = i + 1; j < split.root.size(); ++j) {
        ElementSet img = inst.ambient.image({split.root[i], split.root[j]});
        CHECK(img.set_intersection(split.left_branch).empty());
        CHECK(img.set_intersection(split.right_branch).empty());
      }
  }
}

TEST_CASE("delta instances replay exactly") {
  QuadDeltaInstance a = random_quad_delta(0xabcdULL);
  QuadDeltaInstance b = random_quad_delta(0xabcdULL);
  CHECK(a.ambient == b.ambient);
  CHECK(a.left.support == b.left.support);
  CHECK(a.left.g == b.left.g);
  CHECK(a.right.support == b.right.support);
  CHECK(a.right.g == b.right.g);

  RankedDeltaInstance c = random_ranked_delta(0x1234ULL);
  RankedDeltaInstance d = random_ranked_delta(0x1234ULL);
  CHECK(c.ambient == d.ambient);
  CHECK(c.left.support == d.left.support);
  CHECK(c.left.g == d.left.g);
  CHECK(c.left.rank == d.left.rank);
  CHECK(c.right.support == d.right.support);
  CHECK(c.right.g == d.right.g);
  CHECK(c.right.rank == d.right.rank);
}
