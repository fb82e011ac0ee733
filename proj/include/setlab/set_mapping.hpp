#pragma once

#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "setlab/element_set.hpp"

namespace setlab {

// A set mapping on the ground set {0, ..., n-1}: every k-element subset gets a
// finite image disjoint from it.  Images are stored sparsely; an absent key
// means the empty image.  Keys are the sorted tuples, so iteration over
// images() is deterministic (lexicographic) and serialization is canonical.
//
// Structural flags restrict where images may live and are enforced on every
// write:
//   interval_bounded  (arity 4)  image of {x0<x1<x2<x3} lies in the open
//                                interval (x1, x2)
//   initial_segment   (arity 2)  image of {x<y} lies in [0, x)
// An optional budget mu bounds image sizes strictly: |image| < mu.
struct MappingFlags {
  bool interval_bounded = false;
  bool initial_segment = false;
  friend bool operator==(const MappingFlags& a, const MappingFlags& b) {
    return a.interval_bounded == b.interval_bounded &&
           a.initial_segment == b.initial_segment;
  }
};

class SetMapping {
 public:
  using Flags = MappingFlags;

  SetMapping(int ground_size, int arity, std::optional<int> budget = {},
             Flags flags = {});

  int ground_size() const { return n_; }
  int arity() const { return k_; }
  const std::optional<int>& budget() const { return mu_; }
  const Flags& flags() const { return flags_; }

  // tuple may arrive in any order; it must be a k-subset of the ground set.
  const ElementSet& image(std::span<const Element> tuple) const;
  const ElementSet& image(std::initializer_list<Element> tuple) const;

  // Validates the tuple and every invariant the image must satisfy, then
  // stores it (an empty image erases the key to keep storage canonical).
  void set_image(std::span<const Element> tuple, ElementSet img);
  void set_image(std::initializer_list<Element> tuple, ElementSet img);

  const std::map<std::vector<Element>, ElementSet>& images() const {
    return images_;
  }

  // Same ground size, arity, budget and flags.
  bool same_shape(const SetMapping& other) const;

  // Pointwise containment: every image of *this is a subset of other's image
  // of the same tuple.  Shapes need not match beyond ground size and arity.
  bool contained_in(const SetMapping& other) const;

  // Restriction to the tuples drawn from `dom`, keeping only image elements
  // inside `dom` when trim_images is set (used when comparing a condition
  // against its root).
  SetMapping restricted_to(const ElementSet& dom, bool trim_images = false) const;

  friend bool operator==(const SetMapping&, const SetMapping&) = default;

 private:
  std::vector<Element> checked_tuple(std::span<const Element> tuple) const;

  int n_;
  int k_;
  std::optional<int> mu_;
  Flags flags_;
  std::map<std::vector<Element>, ElementSet> images_;
};

}  // namespace setlab
