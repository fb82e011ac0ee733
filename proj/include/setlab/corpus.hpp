#pragma once

#include <cstdint>
#include <optional>

#include "setlab/forcing.hpp"
#include "setlab/set_mapping.hpp"

namespace setlab {

// Seeded corpus generators backing the randomized campaigns.  Every generator
// is a pure function of its seed; campaigns derive the seed of case i as
// mix_seed(master_seed, i), so any case can be replayed in isolation.

// A mapping whose tuples independently receive small random images (at most
// three elements) drawn from whatever pool the flags and budget allow.
SetMapping random_mapping(int n, int k, std::optional<int> budget,
                          SetMapping::Flags flags, std::uint64_t seed);

// A delta-system pair of valid quadruple conditions over a random
// interval-bounded ambient mapping: ground size 14..18, root of up to six
// elements, branches of one to four.  Randomly drawn conditions are repaired
// to validity by blocking one chain per violating 7-set (root-internal
// repairs are mirrored into the twin so the root restrictions stay equal).
struct QuadDeltaInstance {
  SetMapping ambient;
  QuadCondition left, right;
};
QuadDeltaInstance random_quad_delta(std::uint64_t seed);

// A delta-system pair of ranked conditions over a random arity-2 ambient
// mapping: ground size 12..16, root of up to four elements, branches of one
// to four.  Root-pair ambient images avoid both branches (the amalgamation
// precondition), the shared root-secured ranks carry enough headroom for
// either side to complete, and each side's rank is a canonical completion.
struct RankedDeltaInstance {
  SetMapping ambient;
  RankedCondition left, right;
};
RankedDeltaInstance random_ranked_delta(std::uint64_t seed);

}  // namespace setlab
