#pragma once

#include <string>

#include "setlab/constructions.hpp"
#include "setlab/forcing.hpp"
#include "setlab/ramsey.hpp"
#include "setlab/search.hpp"
#include "setlab/set_mapping.hpp"

namespace setlab {

// JSON serialization.  All writers emit canonical text (sorted keys,
// two-space indent, trailing newline), so serialize(parse(serialize(x)))
// is byte-identical to serialize(x).  Parsers throw parse_error on malformed
// documents; semantic violations surface as the model types' own
// invariant_error with tuple-level diagnostics.

// {"flags": {...}, "images": {"0,1": [2, 3], ...}, "k": 2, "mu": null, "n": 6}
std::string mapping_to_json(const SetMapping& f);
SetMapping mapping_from_json(const std::string& text);

// {"n": 4, "orders": [[], [0], [1, 0], [0, 2, 1]]}
std::string scheme_to_json(const EnumerationScheme& s);
EnumerationScheme scheme_from_json(const std::string& text);

// {"millis": 1.5, "nodes": 42, "optimum": 4, "witness": [0, 1, 2, 3]}
std::string report_to_json(const SearchReport& r);

// {"a": 6, "bits": "010...", "r": 2} — bits over lex-ordered r-subsets
std::string coloring_to_json(const Coloring& c);
Coloring coloring_from_json(const std::string& text);

// {"flavor": "...", "g": {mapping}, "support": [...]} plus, for the ranked
// flavor, "rank": [{"rank": 3, "set": [0, 1, 2]}, ...]
std::string quad_condition_to_json(const QuadCondition& c);
QuadCondition quad_condition_from_json(const std::string& text);
std::string ranked_condition_to_json(const RankedCondition& c);
RankedCondition ranked_condition_from_json(const std::string& text);
std::string pair_condition_to_json(const PairCondition& c);
PairCondition pair_condition_from_json(const std::string& text);

// File plumbing with path-bearing diagnostics (parse_error on IO failure).
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
SetMapping parse_mapping_file(const std::string& path);

}  // namespace setlab
