#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "setlab/constructions.hpp"
#include "setlab/element_set.hpp"
#include "setlab/search.hpp"
#include "setlab/set_mapping.hpp"

namespace setlab {

// Rank witness: secured set -> natural number, strictly decreasing under
// proper end-extension (v extends u with all new elements above max(u), which
// for sorted sets means u is a proper initial prefix of v).
using RankFunction = std::map<std::vector<Element>, int>;

// The three condition flavors.  The ambient mapping is passed to the
// operations rather than stored, so conditions stay plain serializable values.
struct QuadCondition {   // arity 4; valid when no 7-subset is closed and free
  ElementSet support;
  SetMapping g;
};
struct RankedCondition {  // arity 2; rank domain = exactly the secured subsets
  ElementSet support;
  SetMapping g;
  RankFunction rank;
};
struct PairCondition {    // arity 2; total, singleton-or-empty images
  ElementSet support;
  SetMapping g;
};

struct QuadCheck {
  bool valid = true;
  std::optional<ElementSet> witness;  // lex-least violating 7-subset
};

// Throws invariant_error when g is not contained in ambient∩support (a
// containment violation is distinct from invalidity).
QuadCheck check_quad_condition(const SetMapping& ambient,
                               const ElementSet& support, const SetMapping& g);

struct RankedCheck {
  bool valid = true;
  std::string reason;  // empty when valid
  // On a decrease violation: (prefix, extension) with equal-or-rising rank.
  std::optional<std::pair<ElementSet, ElementSet>> offending;
};

RankedCheck check_ranked_condition(const SetMapping& ambient,
                                   const ElementSet& support,
                                   const SetMapping& g, const RankFunction& rank);

struct PairCheck {
  bool valid = true;
  std::string reason;
};

PairCheck check_pair_condition(const SetMapping& ambient,
                               const ElementSet& support, const SetMapping& g);

// All secured subsets of the support, in lexicographic sequence order.
std::vector<ElementSet> secured_subsets(const SetMapping& ambient,
                                        const SetMapping& g,
                                        const ElementSet& support);

// Extends `partial` to a rank function on every secured subset, or nullopt if
// no extension exists.  New sets default to the canonical rank
// c(u) = |{z in support : z > max(u)}|, pushed below old prefix values when
// those force a smaller number.  Throws invariant_error when partial itself is
// inconsistent (violates decrease or ranks a non-secured set).
std::optional<RankFunction> rank_completion(const SetMapping& ambient,
                                            const ElementSet& support,
                                            const SetMapping& g,
                                            const RankFunction& partial);

// Amalgamation of two conditions over their delta-system split.  Both throw
// invariant_error when the preconditions fail, and error (a defect, never
// expected) should the output flunk its own checker.
QuadCondition amalgamate_quad(const SetMapping& ambient, const QuadCondition& p,
                              const QuadCondition& q);
RankedCondition amalgamate_ranked(const SetMapping& ambient,
                                  const RankedCondition& p,
                                  const RankedCondition& q);

// Lexicographically least 5-element subchain of `chain` placing both marks in
// slots {0,1,3,4}; nullopt when no subchain does.  Marks must be distinct
// elements of the chain.
std::optional<ElementSet> position_witness(const ElementSet& chain,
                                           Element mark0, Element mark1);

struct PositionScan {
  bool holds = true;
  std::optional<std::pair<int, int>> failing_marks;  // lex-first failing pair
};

// Exhaustive over all mark pairs in the chain {0..size-1}.  Requires size >= 5.
PositionScan position_lemma_scan(int size);

enum class Flavor { quadruple, ranked_pair, singleton_pair };

struct Goal {
  enum class Kind { include_element, kill_triple };
  Kind kind = Kind::include_element;
  Element element = -1;                      // include_element
  std::array<Element, 3> triple{-1, -1, -1};  // kill_triple, sorted

  static Goal include(Element alpha);
  static Goal kill(Element x0, Element x1, Element x2);
};

struct BuildResult {
  ElementSet support;
  SetMapping mapping;
  RankFunction rank;  // ranked_pair flavor only, else empty
  std::vector<std::array<Element, 2>> empty_pairs;  // singleton_pair flavor
};

// Meets every goal by repeated minimal extension: include goals in ascending
// element order, then kill goals in the given order.  Every intermediate
// condition stays valid for its flavor; an unreachable goal throws error with
// the stuck condition in the message.
BuildResult generic_build(Flavor flavor, const SetMapping& ambient,
                          const ElementSet& universe,
                          std::vector<Goal> goals);

struct DiagonalizeResult {
  bool satisfiable = false;
  std::optional<SetMapping> mapping;  // lex-least assignment when satisfiable
  std::vector<std::array<Element, 2>> empty_pairs;
  std::uint64_t nodes = 0;
};

// Exact backtracking for a singleton-or-empty g ⊆ ambient on the full ground
// set such that every m-subset X contains a pair {y,z} with g({y,z}) ∈ X.
// UNSAT is certified by exhausting the tree.  Requires m >= 3.
DiagonalizeResult diagonalize(const SetMapping& ambient, int m,
                              const SearchLimits& limits = {});

}  // namespace setlab
