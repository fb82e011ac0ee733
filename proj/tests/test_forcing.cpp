#include <optional>
#include <vector>

#include "doctest.h"
#include "setlab/constructions.hpp"
#include "setlab/errors.hpp"
#include "setlab/forcing.hpp"
#include "setlab/predicates.hpp"
#include "setlab/search.hpp"

using namespace setlab;

TEST_CASE("quadruple condition checker") {
  SetMapping F = interval_mapping(7);
  ElementSet s = ElementSet::range(7);

  SetMapping g(7, 4);
  QuadCheck bare = check_quad_condition(F, s, g);
  CHECK(!bare.valid);
  CHECK(*bare.witness == ElementSet::range(7));  // s itself is closed and free

  g.set_image({0, 1, 3, 4}, ElementSet{2});
  CHECK(check_quad_condition(F, s, g).valid);

  CHECK(check_quad_condition(F, ElementSet::range(6), SetMapping(7, 4)).valid);

  SetMapping stray(7, 4);
  stray.set_image({0, 1, 3, 4}, ElementSet{5});  // outside F's image (1,3)
  CHECK_THROWS_AS(check_quad_condition(F, s, stray), invariant_error);
}

TEST_CASE("ranked condition checker") {
  SetMapping F = prefix_mapping(4);
  ElementSet s = ElementSet::range(4);
  SetMapping g(4, 2);

  RankFunction canonical;
  canonical[{0, 1, 2}] = 1;
  canonical[{0, 1, 3}] = 0;
  canonical[{0, 2, 3}] = 0;
  canonical[{1, 2, 3}] = 0;
  canonical[{0, 1, 2, 3}] = 0;
  CHECK(check_ranked_condition(F, s, g, canonical).valid);

  RankFunction flat = canonical;
  for (auto& [u, r] : flat) r = 0;
  RankedCheck bad = check_ranked_condition(F, s, g, flat);
  CHECK(!bad.valid);
  REQUIRE(bad.offending.has_value());
  CHECK(bad.offending->first == ElementSet{0, 1, 2});
  CHECK(bad.offending->second == ElementSet{0, 1, 2, 3});

  RankFunction missing = canonical;
  missing.erase({0, 2, 3});
  CHECK(!check_ranked_condition(F, s, g, missing).valid);

  RankFunction extra = canonical;
  extra[{0, 1}] = 5;  // not secured: too small
  CHECK(!check_ranked_condition(F, s, g, extra).valid);
}

TEST_CASE("pair condition checker") {
  SetMapping F = complete_pair_mapping(4);
  SetMapping g(4, 2);
  g.set_image({0, 1}, ElementSet{2});
  CHECK(check_pair_condition(F, ElementSet::range(4), g).valid);
  g.set_image({0, 2}, ElementSet{1, 3});
  CHECK(!check_pair_condition(F, ElementSet::range(4), g).valid);
}

TEST_CASE("secured subsets enumerate lexicographically") {
  SetMapping F = prefix_mapping(4);
  SetMapping g(4, 2);
  std::vector<ElementSet> all =
      secured_subsets(F, g, ElementSet::range(4));
  std::vector<ElementSet> expect = {
      {0, 1, 2}, {0, 1, 2, 3}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  CHECK(all == expect);

  g.set_image({2, 3}, ElementSet{0});
  std::vector<ElementSet> fewer = secured_subsets(F, g, ElementSet::range(4));
  std::vector<ElementSet> expect2 = {{0, 1, 2}, {0, 1, 3}, {1, 2, 3}};
  CHECK(fewer == expect2);
}

TEST_CASE("rank completion") {
  SetMapping F = prefix_mapping(4);
  SetMapping g(4, 2);
  ElementSet s = ElementSet::range(4);

  SUBCASE("empty partial gives the canonical rank") {
    std::optional<RankFunction> r = rank_completion(F, s, g, {});
    REQUIRE(r.has_value());
    CHECK(r->at({0, 1, 2}) == 1);
    CHECK(r->at({0, 1, 3}) == 0);
    CHECK(r->at({0, 1, 2, 3}) == 0);
    CHECK(check_ranked_condition(F, s, g, *r).valid);
  }

  SUBCASE("fixed prefix at zero leaves no room below") {
    RankFunction partial;
    partial[{0, 1, 2}] = 0;  // {0,1,2,3} is secured, new, and must go below 0
    CHECK(!rank_completion(F, s, g, partial).has_value());
  }

  SUBCASE("fixed prefix higher up completes") {
    RankFunction partial;
    partial[{0, 1, 2}] = 3;
    std::optional<RankFunction> r = rank_completion(F, s, g, partial);
    REQUIRE(r.has_value());
    CHECK(r->at({0, 1, 2}) == 3);
    CHECK(check_ranked_condition(F, s, g, *r).valid);
  }

  SUBCASE("inconsistent partial throws") {
    RankFunction partial;
    partial[{0, 1, 2}] = 0;
    partial[{0, 1, 2, 3}] = 5;
    CHECK_THROWS_AS(rank_completion(F, s, g, partial), invariant_error);
  }
}

TEST_CASE("position witness scans") {
  ElementSet chain = ElementSet::range(7);
  std::optional<ElementSet> far = position_witness(chain, 0, 6);
  REQUIRE(far.has_value());
  CHECK(*far == ElementSet{0, 1, 2, 3, 6});  // marks land in slots 0 and 4

  std::optional<ElementSet> top = position_witness(chain, 5, 6);
  REQUIRE(top.has_value());
  CHECK(*top == ElementSet{0, 1, 2, 5, 6});  // marks land in slots 3 and 4

  CHECK(position_witness(chain, 2, 3).has_value());
  CHECK(!position_witness(ElementSet::range(6), 2, 3).has_value());
}

TEST_CASE("position lemma scan over chain sizes") {
  CHECK(position_lemma_scan(7).holds);
  CHECK(position_lemma_scan(8).holds);
  CHECK(position_lemma_scan(10).holds);
  PositionScan six = position_lemma_scan(6);
  CHECK(!six.holds);
  CHECK(*six.failing_marks == std::pair<int, int>{2, 3});
  CHECK(!position_lemma_scan(5).holds);
}

TEST_CASE("quadruple amalgamation on a small instance") {
  SetMapping F = interval_mapping(8);
  QuadCondition left{ElementSet{0, 1, 2, 3, 4},
                     SetMapping(8, 4, std::nullopt, F.flags())};
  QuadCondition right{ElementSet{0, 5, 6, 7},
                      SetMapping(8, 4, std::nullopt, F.flags())};
  // Both supports have at most five elements, so both inputs are valid.
  REQUIRE(check_quad_condition(F, left.support, left.g).valid);
  REQUIRE(check_quad_condition(F, right.support, right.g).valid);

  QuadCondition out = amalgamate_quad(F, left, right);
  CHECK(out.support == ElementSet::range(8));
  CHECK(check_quad_condition(F, out.support, out.g).valid);
  CHECK(out.g.restricted_to(left.support) == left.g);
  CHECK(out.g.restricted_to(right.support) == right.g);
  // A mixed tuple carries the maximal image allowed by the ambient mapping.
  CHECK(out.g.image({0, 1, 6, 7}) ==
        F.image({0, 1, 6, 7}).set_intersection(out.support));
}

TEST_CASE("ranked amalgamation on a small instance") {
  SetMapping F = prefix_mapping(6);
  SetMapping gl(6, 2);
  SetMapping gr(6, 2);
  RankFunction rl, rr;
  rl[{0, 1, 2}] = 0;
  rr[{0, 1, 3}] = 0;
  RankedCondition left{ElementSet{0, 1, 2}, gl, rl};
  RankedCondition right{ElementSet{0, 1, 3}, gr, rr};
  REQUIRE(check_ranked_condition(F, left.support, left.g, left.rank).valid);
  REQUIRE(check_ranked_condition(F, right.support, right.g, right.rank).valid);

  RankedCondition out = amalgamate_ranked(F, left, right);
  CHECK(out.support == ElementSet{0, 1, 2, 3});
  CHECK(check_ranked_condition(F, out.support, out.g, out.rank).valid);
  // The mixed pair {2,3} picks up the maximal image {0,1}, which blocks every
  // would-be new secured set, so the rank is exactly the two old entries.
  CHECK(out.g.image({2, 3}) == ElementSet{0, 1});
  CHECK(out.rank.size() == 2);
  CHECK(out.rank.at({0, 1, 2}) == 0);
  CHECK(out.rank.at({0, 1, 3}) == 0);
}

TEST_CASE("amalgamation rejects structurally bad inputs") {
  SetMapping F = prefix_mapping(5);
  SetMapping g(5, 2);
  RankFunction rl, rr;
  rl[{1, 2, 3}] = 0;
  rr[{2, 3, 4}] = 0;
  // Both inputs are valid on their own, but the root pair {2,3} maps onto
  // {0,1} under the ambient mapping, which meets the branch {1}.
  RankedCondition left{ElementSet{1, 2, 3}, g, rl};
  RankedCondition right{ElementSet{2, 3, 4}, g, rr};
  REQUIRE(check_ranked_condition(F, left.support, left.g, left.rank).valid);
  REQUIRE(check_ranked_condition(F, right.support, right.g, right.rank).valid);
  CHECK_THROWS_AS(amalgamate_ranked(F, left, right), invariant_error);
}

TEST_CASE("generic build meets inclusion goals in every flavor") {
  SUBCASE("quadruple over a small universe is unconstrained") {
    SetMapping F = interval_mapping(6);
    std::vector<Goal> goals;
    for (Element e = 0; e < 6; ++e) goals.push_back(Goal::include(e));
    BuildResult res =
        generic_build(Flavor::quadruple, F, ElementSet::range(6), goals);
    CHECK(res.support == ElementSet::range(6));
    CHECK(check_quad_condition(F, res.support, res.mapping).valid);
  }

  SUBCASE("singleton flavor builds a total mapping under the ambient one") {
    SetMapping F = complete_pair_mapping(6);
    std::vector<Goal> goals;
    for (Element e = 0; e < 6; ++e) goals.push_back(Goal::include(e));
    BuildResult res =
        generic_build(Flavor::singleton_pair, F, ElementSet::range(6), goals);
    CHECK(res.support == ElementSet::range(6));
    CHECK(res.mapping.contained_in(F));
    CHECK(check_pair_condition(F, res.support, res.mapping).valid);
    // Totality: every pair either carries a singleton or is reported empty.
    std::size_t assigned = res.mapping.images().size();
    CHECK(assigned + res.empty_pairs.size() == 15);
  }

  SUBCASE("kill goals remove the triple from the free family") {
    SetMapping F = complete_pair_mapping(6);
    std::vector<Goal> goals = {Goal::include(0), Goal::include(1),
                               Goal::include(2), Goal::kill(0, 1, 2)};
    BuildResult res =
        generic_build(Flavor::singleton_pair, F, ElementSet::range(6), goals);
    CHECK(!is_free(res.mapping, ElementSet{0, 1, 2}));
  }

  SUBCASE("unreachable goals surface as errors") {
    SetMapping F(6, 2);  // empty ambient: no kill value is ever available
    std::vector<Goal> goals = {Goal::kill(0, 1, 2)};
    CHECK_THROWS_AS(
        generic_build(Flavor::singleton_pair, F, ElementSet::range(6), goals),
        error);
  }

  SUBCASE("ranked flavor stays valid") {
    SetMapping F = prefix_mapping(8);
    std::vector<Goal> goals;
    for (Element e = 1; e < 8; e += 2) goals.push_back(Goal::include(e));
    BuildResult res =
        generic_build(Flavor::ranked_pair, F, ElementSet::range(8), goals);
    CHECK(ElementSet{1, 3, 5, 7}.subset_of(res.support));
    CHECK(check_ranked_condition(F, res.support, res.mapping, res.rank).valid);
  }
}

TEST_CASE("diagonalization") {
  SUBCASE("dense four-point instance is satisfiable with the least table") {
    DiagonalizeResult res = diagonalize(complete_pair_mapping(4), 3);
    REQUIRE(res.satisfiable);
    REQUIRE(res.mapping.has_value());
    CHECK(res.mapping->image({0, 1}) == ElementSet{2});
    CHECK(res.mapping->image({0, 2}) == ElementSet{1});
    CHECK(res.mapping->image({0, 3}) == ElementSet{1});
    CHECK(res.mapping->image({1, 2}) == ElementSet{0});
    CHECK(res.mapping->image({1, 3}) == ElementSet{2});
    CHECK(res.mapping->image({2, 3}) == ElementSet{0});
    CHECK(res.mapping->contained_in(complete_pair_mapping(4)));
    CHECK(enumerate_free_sets(*res.mapping, 3).empty());
    CHECK(res.empty_pairs.empty());
  }

  SUBCASE("prefix instance is unsatisfiable") {
    CHECK(!diagonalize(prefix_mapping(4), 3).satisfiable);
  }

  SUBCASE("single-triple instance") {
    DiagonalizeResult res = diagonalize(complete_pair_mapping(3), 3);
    REQUIRE(res.satisfiable);
    CHECK(res.mapping->image({0, 1}) == ElementSet{2});
  }

  SUBCASE("guards") {
    CHECK_THROWS_AS(diagonalize(complete_pair_mapping(4), 2), usage_error);
    SearchLimits tight;
    tight.max_nodes = 2;
    CHECK_THROWS_AS(diagonalize(complete_pair_mapping(7), 3, tight),
                    resource_limit_error);
  }
}
