#pragma once

#include <chrono>
#include <cstdint>

#include "setlab/element_set.hpp"
#include "setlab/set_mapping.hpp"

namespace setlab {

struct SearchLimits {
  std::uint64_t max_nodes = 100'000'000;
  double max_seconds = 60.0;
  int workers = 1;  // > 1 splits the root frontier across threads
};

struct SearchReport {
  int optimum = 0;
  ElementSet witness;  // lexicographically least set attaining the optimum
  std::uint64_t nodes_explored = 0;
  double millis = 0.0;
};

// Exact maximum free set via branch and bound over element masks.  Branches on
// the least undecided element (include first), prunes with the trivial bound
// |chosen| + |candidates| and drops candidates blocked by completed tuples.
// Requires ground size <= 64; throws resource_limit_error when the limits are
// hit, usage_error on an oversized ground set.
SearchReport max_free_set(const SetMapping& f, const SearchLimits& limits = {});

// All free sets of size exactly m, in lexicographic order.
std::vector<ElementSet> enumerate_free_sets(const SetMapping& f, int m,
                                            const SearchLimits& limits = {});

// Independent oracle: unpruned sweep over all 2^n subsets, tracking the best
// by size then lexicographic order.  Hard cap n <= 20 (usage_error beyond).
SearchReport oracle_max_free_set(const SetMapping& f);

}  // namespace setlab
