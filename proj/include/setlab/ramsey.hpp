#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "setlab/element_set.hpp"
#include "setlab/set_mapping.hpp"

namespace setlab {

// A total 2-coloring of the r-subsets of [0, a).  bits[i] is the color of the
// i-th subset in lexicographic order, so the bit-string serialization is just
// the vector read left to right.
struct Coloring {
  int a = 0;
  int r = 0;
  std::vector<std::uint8_t> bits;  // size C(a, r), entries 0 or 1

  friend bool operator==(const Coloring&, const Coloring&) = default;
};

// Position of `subset` (sorted r-subset of [0, a)) in lexicographic order.
std::size_t lex_rank(int a, int r, std::span<const int> subset);

int coloring_value(const Coloring& col, std::span<const int> subset);

// First (lexicographic) subset of the given size all of whose r-subsets carry
// `color`; nullopt when none exists (in particular when size > a).
std::optional<ElementSet> find_homogeneous(const Coloring& col, int size,
                                           int color);

// True when the coloring witnesses the failure of a -> (b, c)^r: no
// 0-homogeneous b-set and no 1-homogeneous c-set.
bool verify_counterexample(const Coloring& col, int b, int c);

struct ArrowVerdict {
  bool holds = true;
  std::optional<Coloring> counterexample;  // least coloring refuting the arrow
};

// plain sweeps every coloring; canonical skips colorings that are not the
// lexicographically least representative of their orbit under vertex
// permutations.  Both are exact and emit the same least counterexample (the
// least counterexample is least in its own orbit); canonical trades the skip
// test for fewer evaluations and is kept honest by a plain reference sweep on
// small instances.
enum class SweepMode { plain, canonical };

// Exhaustive confirmation of a -> (b, c)^r.  Requires r <= b <= a and r <= c;
// c may exceed a (no c-subsets exist, so only 0-homogeneous sets can help).
// Caps C(a, r) at 24; beyond that only refutation is offered.
ArrowVerdict arrow_check(int a, int b, int c, int r,
                         SweepMode mode = SweepMode::plain);

// Counterexample search for a -> (b, c)^r: seeded random colorings with a
// repair loop flipping one r-subset inside an offending homogeneous set.  A
// returned coloring is always verified; nullopt proves nothing.
std::optional<Coloring> arrow_refute(int a, int b, int c, int r,
                                     std::uint64_t seed, int tries = 64);

struct LadderEntry {
  int value = 0;
  bool exact = false;  // lower bound when false
};

// The tower t_0 = 5, t_1 = 7, t_{n+1} = least a with a -> (t_n, 7)^5.
// Entries 0 and 1 are exact (the second confirmed by sweeping a upward until
// the arrow holds); later entries are lower bounds produced by the refutation
// engine, pushed up to refute_max_a for t_2 and by one more refuted level for
// each step after that.
std::vector<LadderEntry> t_ladder(int n_max, int refute_max_a = 16,
                                  std::uint64_t seed = 0);

// r = 3 coloring of the chain's triples: 1 when the least element lies in the
// image of the other two, else 0.  Positions in the coloring index the chain
// in increasing order.
Coloring triple_coloring(const SetMapping& f, const ElementSet& chain);

}  // namespace setlab
