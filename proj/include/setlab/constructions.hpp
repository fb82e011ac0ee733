#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "setlab/element_set.hpp"
#include "setlab/set_mapping.hpp"

namespace setlab {

// Arity-4 mapping on {0..n-1} sending {x0<x1<x2<x3} to the full open interval
// (x1, x2).  Its largest free set has exactly four elements.  Requires n >= 4.
SetMapping interval_mapping(int n);

// Arity-2 mapping sending {x<y} to the initial segment [0, x).  Requires
// n >= 2.
SetMapping prefix_mapping(int n);

// Arity-2 mapping sending {x, y} to everything else; its only free sets are
// the sets of size < 3.  Requires n >= 2.
SetMapping complete_pair_mapping(int n);

// For each x, an enumeration (permutation) of the elements below x.  Drives
// the pair mapping below and the descent-chain statistic.
class EnumerationScheme {
 public:
  static EnumerationScheme identity(int n);
  static EnumerationScheme shuffled(int n, std::uint64_t seed);
  // orders[x] must be a permutation of {0..x-1}; throws invariant_error.
  EnumerationScheme(int n, std::vector<std::vector<Element>> orders);

  int ground_size() const { return n_; }
  const std::vector<Element>& order_of(Element x) const;

  // Position of x in the enumeration below y; requires x < y.
  int index_of(Element x, Element y) const;

  friend bool operator==(const EnumerationScheme&, const EnumerationScheme&) = default;

 private:
  int n_;
  std::vector<std::vector<Element>> orders_;
};

// Pair mapping f({x<y}) = the first index_of(x,y)+1 entries of the enumeration
// below x.  Images sit inside [0, x), so the initial_segment flag holds.
SetMapping enumeration_mapping(const EnumerationScheme& scheme);

// For H = {h0 < h1 < ...}, the sequence index_of(h_j, h_{j+1}) over
// consecutive pairs, j ascending.  When H is free for
// enumeration_mapping(scheme) this sequence is strictly decreasing, which is
// what caps how long a free set can grow.  Requires |H| >= 2.
std::vector<int> descent_chain(const EnumerationScheme& scheme, const ElementSet& H);

// A partial mapping together with the support it lives on.
struct SupportedMapping {
  const SetMapping* mapping;
  const ElementSet* support;
};

// Extends old partial mappings to `support`: tuples flagged by `mixed` get the
// ambient image cut down to the support, tuples inside an old support inherit
// the old value, everything else stays empty.  Old mappings must agree where
// their supports overlap (invariant_error otherwise).
SetMapping maximal_extension(
    const SetMapping& ambient, const ElementSet& support,
    std::span<const SupportedMapping> old,
    const std::function<bool(std::span<const Element>)>& mixed);

// Two supports split into a common root and disjoint branches, with the
// partial mappings attached.
struct DeltaSystemPair {
  ElementSet root;
  ElementSet left_branch, right_branch;
  ElementSet left_support, right_support;
  SetMapping left, right;
};

DeltaSystemPair make_delta_system_pair(const ElementSet& left_support,
                                       const SetMapping& left,
                                       const ElementSet& right_support,
                                       const SetMapping& right);

// Structural preconditions for amalgamation: branch disjointness (holds by
// construction of the split, re-checked anyway), identical restrictions to the
// root, and for arity-2 ambients the root-pair images avoiding both branches.
bool verify_delta_preconditions(const DeltaSystemPair& pair,
                                const SetMapping& ambient);

}  // namespace setlab
