#include "setlab/element_set.hpp"

#include <algorithm>
#include <bit>

#include "setlab/errors.hpp"

namespace setlab {

ElementSet::ElementSet(std::vector<Element> elems) : elems_(std::move(elems)) {
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

ElementSet::ElementSet(std::initializer_list<Element> elems)
    : ElementSet(std::vector<Element>(elems)) {}

ElementSet ElementSet::range(Element n) {
  std::vector<Element> v;
  v.reserve(static_cast<std::size_t>(n > 0 ? n : 0));
  for (Element e = 0; e < n; ++e) v.push_back(e);
  ElementSet s;
  s.elems_ = std::move(v);
  return s;
}

ElementSet ElementSet::from_mask(std::uint64_t mask) {
  ElementSet s;
  while (mask) {
    int b = std::countr_zero(mask);
    s.elems_.push_back(b);
    mask &= mask - 1;
  }
  return s;
}

bool ElementSet::contains(Element e) const {
  return std::binary_search(elems_.begin(), elems_.end(), e);
}

bool ElementSet::intersects(const ElementSet& other) const {
  auto a = elems_.begin();
  auto b = other.elems_.begin();
  while (a != elems_.end() && b != other.elems_.end()) {
    if (*a == *b) return true;
    if (*a < *b) ++a; else ++b;
  }
  return false;
}

bool ElementSet::subset_of(const ElementSet& other) const {
  return std::includes(other.elems_.begin(), other.elems_.end(),
                       elems_.begin(), elems_.end());
}

ElementSet ElementSet::set_union(const ElementSet& other) const {
  ElementSet out;
  std::set_union(elems_.begin(), elems_.end(), other.elems_.begin(),
                 other.elems_.end(), std::back_inserter(out.elems_));
  return out;
}

ElementSet ElementSet::set_intersection(const ElementSet& other) const {
  ElementSet out;
  std::set_intersection(elems_.begin(), elems_.end(), other.elems_.begin(),
                        other.elems_.end(), std::back_inserter(out.elems_));
  return out;
}

ElementSet ElementSet::set_difference(const ElementSet& other) const {
  ElementSet out;
  std::set_difference(elems_.begin(), elems_.end(), other.elems_.begin(),
                      other.elems_.end(), std::back_inserter(out.elems_));
  return out;
}

ElementSet ElementSet::with(Element e) const {
  if (contains(e)) return *this;
  ElementSet out = *this;
  out.elems_.insert(std::upper_bound(out.elems_.begin(), out.elems_.end(), e), e);
  return out;
}

ElementSet ElementSet::prefix(int len) const {
  ElementSet out;
  out.elems_.assign(elems_.begin(), elems_.begin() + std::min<std::size_t>(
      static_cast<std::size_t>(len > 0 ? len : 0), elems_.size()));
  return out;
}

std::uint64_t ElementSet::to_mask() const {
  std::uint64_t m = 0;
  for (Element e : elems_) {
    if (e < 0 || e >= 64) throw invariant_error("element out of mask range: " + std::to_string(e));
    m |= std::uint64_t{1} << e;
  }
  return m;
}

std::string ElementSet::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(elems_[i]);
  }
  return s + "}";
}

std::string tuple_to_string(std::span<const Element> tuple) {
  std::string s = "(";
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(tuple[i]);
  }
  return s + ")";
}

}  // namespace setlab
