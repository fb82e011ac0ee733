#pragma once

#include "setlab/element_set.hpp"
#include "setlab/set_mapping.hpp"

namespace setlab {

// H is free for f when no k-subset of H has an image meeting H.  Throws
// invariant_error if H leaves f's ground set.
bool is_free(const SetMapping& f, const ElementSet& H);

// Chain predicates drive the condition checkers.  For arity 4 the chains of a
// set U are its 5-element subsets {x0<x1<x2<x3<x4}: the designated element is
// the middle x2, the designated tuple the outer quadruple {x0,x1,x3,x4}.  For
// arity 2 the chains are the triples {x0<x1<x2} with designated element x0 and
// designated tuple {x1,x2}.  Other arities are unsupported (usage_error).

// Every chain of U has its designated element inside f(designated tuple).
bool is_chain_closed(const SetMapping& f, const ElementSet& U);

// No chain of U has its designated element inside g(designated tuple).
bool is_chain_free(const SetMapping& g, const ElementSet& U);

// A set u is secured for (F, g), arity 2, when |u| >= 3, u is chain-closed
// under F and chain-free under g.
bool is_secured(const SetMapping& F, const SetMapping& g, const ElementSet& u);

// Freeness evaluated through the chain route.  Requires the structural flag
// matching f's arity (interval_bounded for 4, initial_segment for 2); for such
// mappings this agrees with is_free, and the tests certify the agreement.
bool reduced_free(const SetMapping& f, const ElementSet& H);

}  // namespace setlab
