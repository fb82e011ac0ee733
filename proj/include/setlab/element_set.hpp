#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace setlab {

using Element = int;

// A finite set of ground elements, stored strictly increasing.  Inputs may be
// unordered and may repeat; construction sorts and deduplicates.  Elements are
// plain ints; which ground set they live in is checked by the operations that
// take an ElementSet together with a mapping.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::vector<Element> elems);
  ElementSet(std::initializer_list<Element> elems);

  static ElementSet range(Element n);  // {0, 1, ..., n-1}
  static ElementSet from_mask(std::uint64_t mask);

  bool empty() const { return elems_.empty(); }
  int size() const { return static_cast<int>(elems_.size()); }
  Element operator[](int i) const { return elems_[static_cast<std::size_t>(i)]; }
  Element min() const { return elems_.front(); }
  Element max() const { return elems_.back(); }

  bool contains(Element e) const;
  bool intersects(const ElementSet& other) const;
  bool subset_of(const ElementSet& other) const;

  ElementSet set_union(const ElementSet& other) const;
  ElementSet set_intersection(const ElementSet& other) const;
  ElementSet set_difference(const ElementSet& other) const;
  ElementSet with(Element e) const;

  // Initial segment of length len in increasing order.
  ElementSet prefix(int len) const;

  // Requires all elements in [0, 64).
  std::uint64_t to_mask() const;

  const std::vector<Element>& elements() const { return elems_; }
  std::span<const Element> span() const { return elems_; }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

  std::string to_string() const;  // "{0, 2, 5}"

  friend auto operator<=>(const ElementSet&, const ElementSet&) = default;

 private:
  std::vector<Element> elems_;
};

// Renders a tuple the way diagnostics expect: "(0, 1, 3, 4)".
std::string tuple_to_string(std::span<const Element> tuple);

}  // namespace setlab
