#include <cstdio>
#include <string>

#include "doctest.h"
#include "setlab/constructions.hpp"
#include "setlab/corpus.hpp"
#include "setlab/errors.hpp"
#include "setlab/forcing.hpp"
#include "setlab/io.hpp"
#include "setlab/ramsey.hpp"

using namespace setlab;

TEST_CASE("mapping serialization round-trips and is byte-stable") {
  for (const SetMapping& f :
       {interval_mapping(6), prefix_mapping(5), complete_pair_mapping(4),
        enumeration_mapping(EnumerationScheme::shuffled(6, 21)),
        random_mapping(8, 2, 3, {}, 0x10ULL)}) {
    std::string text = mapping_to_json(f);
    SetMapping back = mapping_from_json(text);
    CHECK(back == f);
    CHECK(mapping_to_json(back) == text);
  }
}

TEST_CASE("mapping documents carry shape, budget and flags") {
  SetMapping f(6, 2, 3, {.initial_segment = true});
  f.set_image({2, 4}, ElementSet{0, 1});
  std::string text = mapping_to_json(f);
  CHECK(text.find("\"k\": 2") != std::string::npos);
  CHECK(text.find("\"n\": 6") != std::string::npos);
  CHECK(text.find("\"mu\": 3") != std::string::npos);
  CHECK(text.find("\"initial_segment\": true") != std::string::npos);
  CHECK(text.find("\"2,4\"") != std::string::npos);

  SetMapping unbounded(4, 2);
  CHECK(mapping_to_json(unbounded).find("\"mu\": null") != std::string::npos);
}

TEST_CASE("malformed documents raise parse errors") {
  CHECK_THROWS_AS(mapping_from_json("{"), parse_error);
  CHECK_THROWS_AS(mapping_from_json("[]"), parse_error);
  CHECK_THROWS_AS(mapping_from_json("{\"k\": 2}"), parse_error);
  CHECK_THROWS_AS(
      mapping_from_json(
          R"({"k": "two", "n": 4, "mu": null, "flags": {}, "images": {}})"),
      parse_error);
  CHECK_THROWS_AS(
      mapping_from_json(
          R"({"k": 2, "n": 4, "mu": null, "flags": {}, "images": {"0;1": [2]}})"),
      parse_error);
}

TEST_CASE("invariant violations in documents name the tuple") {
  // Image meets its own tuple.
  try {
    mapping_from_json(
        R"({"k": 2, "n": 4, "mu": null, "flags": {}, "images": {"0,1": [1]}})");
    FAIL("expected an invariant error");
  } catch (const invariant_error& e) {
    CHECK(std::string(e.what()).find("(0, 1)") != std::string::npos);
  }

  // Structural flag violated by a stored image.
  CHECK_THROWS_AS(
      mapping_from_json(
          R"({"k": 4, "n": 8, "mu": null,
              "flags": {"interval_bounded": true, "initial_segment": false},
              "images": {"0,1,2,3": [5]}})"),
      invariant_error);

  // Budget violated.
  CHECK_THROWS_AS(
      mapping_from_json(
          R"({"k": 2, "n": 6, "mu": 2, "flags": {}, "images": {"0,1": [2, 3]}})"),
      invariant_error);
}

TEST_CASE("scheme serialization") {
  EnumerationScheme s = EnumerationScheme::shuffled(6, 9);
  std::string text = scheme_to_json(s);
  CHECK(scheme_from_json(text) == s);
  CHECK(scheme_to_json(scheme_from_json(text)) == text);
  CHECK_THROWS_AS(scheme_from_json(R"({"n": 3, "orders": [[], [0]]})"),
                  parse_error);
}

TEST_CASE("search report serialization") {
  SearchReport r;
  r.optimum = 4;
  r.witness = ElementSet{0, 1, 2, 3};
  r.nodes_explored = 42;
  r.millis = 1.5;
  std::string text = report_to_json(r);
  CHECK(text.find("\"optimum\": 4") != std::string::npos);
  CHECK(text.find("\"nodes\": 42") != std::string::npos);
  CHECK(text.find("\"millis\": 1.5") != std::string::npos);
}

TEST_CASE("coloring serialization") {
  Coloring c;
  c.a = 5;
  c.r = 2;
  c.bits = {0, 1, 0, 1, 0, 1, 0, 1, 0, 1};
  std::string text = coloring_to_json(c);
  CHECK(text.find("\"bits\": \"0101010101\"") != std::string::npos);
  CHECK(coloring_from_json(text) == c);
  CHECK(coloring_to_json(coloring_from_json(text)) == text);
  // Length must match C(a, r).
  CHECK_THROWS_AS(coloring_from_json(R"({"a": 5, "r": 2, "bits": "010"})"),
                  parse_error);
}

TEST_CASE("condition serialization round-trips") {
  SetMapping F = interval_mapping(7);
  SetMapping g(7, 4);
  g.set_image({0, 1, 3, 4}, ElementSet{2});
  QuadCondition quad{ElementSet::range(7), g};
  std::string quad_text = quad_condition_to_json(quad);
  QuadCondition quad_back = quad_condition_from_json(quad_text);
  CHECK(quad_back.support == quad.support);
  CHECK(quad_back.g == quad.g);
  CHECK(quad_condition_to_json(quad_back) == quad_text);
  CHECK(quad_text.find("\"flavor\": \"quadruple\"") != std::string::npos);
  // Validity only depends on the document content: it survives the trip.
  CHECK(check_quad_condition(F, quad_back.support, quad_back.g).valid ==
        check_quad_condition(F, quad.support, quad.g).valid);

  SetMapping F2 = prefix_mapping(4);
  SetMapping g2(4, 2);
  RankedCondition ranked{ElementSet::range(4), g2,
                         *rank_completion(F2, ElementSet::range(4), g2, {})};
  std::string ranked_text = ranked_condition_to_json(ranked);
  RankedCondition ranked_back = ranked_condition_from_json(ranked_text);
  CHECK(ranked_back.support == ranked.support);
  CHECK(ranked_back.g == ranked.g);
  CHECK(ranked_back.rank == ranked.rank);
  CHECK(ranked_condition_to_json(ranked_back) == ranked_text);
  CHECK(ranked_text.find("\"flavor\": \"ranked_pair\"") != std::string::npos);
  CHECK(check_ranked_condition(F2, ranked_back.support, ranked_back.g,
                               ranked_back.rank)
            .valid);

  SetMapping g3(4, 2);
  g3.set_image({0, 1}, ElementSet{2});
  PairCondition pair{ElementSet::range(4), g3};
  std::string pair_text = pair_condition_to_json(pair);
  PairCondition pair_back = pair_condition_from_json(pair_text);
  CHECK(pair_back.support == pair.support);
  CHECK(pair_back.g == pair.g);
  CHECK(pair_text.find("\"flavor\": \"singleton_pair\"") != std::string::npos);
}

TEST_CASE("file io") {
  const std::string path = "io_roundtrip_tmp.json";
  SetMapping f = interval_mapping(6);
  write_text_file(path, mapping_to_json(f));
  CHECK(parse_mapping_file(path) == f);
  CHECK(read_text_file(path) == mapping_to_json(f));
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_text_file("definitely_missing_file.json"), parse_error);
}
