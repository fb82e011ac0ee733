#include "setlab/set_mapping.hpp"

#include <algorithm>

#include "setlab/errors.hpp"

namespace setlab {

namespace {
const ElementSet kEmpty;
}

SetMapping::SetMapping(int ground_size, int arity, std::optional<int> budget,
                       Flags flags)
    : n_(ground_size), k_(arity), mu_(budget), flags_(flags) {
  if (n_ < 1) throw invariant_error("ground set must be nonempty");
  if (k_ < 1) throw invariant_error("arity must be positive");
  if (mu_ && *mu_ < 1) throw invariant_error("budget must be positive");
  if (flags_.interval_bounded && k_ != 4)
    throw invariant_error("interval_bounded requires arity 4");
  if (flags_.initial_segment && k_ != 2)
    throw invariant_error("initial_segment requires arity 2");
}

std::vector<Element> SetMapping::checked_tuple(
    std::span<const Element> tuple) const {
  if (static_cast<int>(tuple.size()) != k_)
    throw invariant_error("tuple " + tuple_to_string(tuple) + " has size " +
                          std::to_string(tuple.size()) + ", expected arity " +
                          std::to_string(k_));
  std::vector<Element> t(tuple.begin(), tuple.end());
  std::sort(t.begin(), t.end());
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < 0 || t[i] >= n_)
      throw invariant_error("tuple " + tuple_to_string(tuple) +
                            " leaves the ground set of size " + std::to_string(n_));
    if (i > 0 && t[i] == t[i - 1])
      throw invariant_error("tuple " + tuple_to_string(tuple) +
                            " repeats an element; a k-set is required");
  }
  return t;
}

const ElementSet& SetMapping::image(std::span<const Element> tuple) const {
  auto it = images_.find(checked_tuple(tuple));
  return it == images_.end() ? kEmpty : it->second;
}

const ElementSet& SetMapping::image(std::initializer_list<Element> tuple) const {
  return image(std::span<const Element>(tuple.begin(), tuple.size()));
}

void SetMapping::set_image(std::span<const Element> tuple, ElementSet img) {
  std::vector<Element> t = checked_tuple(tuple);
  const std::string where = "image of " + tuple_to_string(t);
  for (Element e : img) {
    if (e < 0 || e >= n_)
      throw invariant_error(where + " leaves the ground set: element " +
                            std::to_string(e));
    if (std::binary_search(t.begin(), t.end(), e))
      throw invariant_error(where + " meets its own tuple at " +
                            std::to_string(e));
  }
  if (mu_ && img.size() >= *mu_)
    throw invariant_error(where + " has size " + std::to_string(img.size()) +
                          ", not below the budget " + std::to_string(*mu_));
  if (flags_.interval_bounded && !img.empty()) {
    // t = {x0 < x1 < x2 < x3}; the image must sit strictly between x1 and x2.
    if (img.min() <= t[1] || img.max() >= t[2])
      throw invariant_error(where + " leaves the open interval (" +
                            std::to_string(t[1]) + ", " + std::to_string(t[2]) +
                            ")");
  }
  if (flags_.initial_segment && !img.empty()) {
    if (img.max() >= t[0])
      throw invariant_error(where + " must lie below " + std::to_string(t[0]));
  }
  if (img.empty())
    images_.erase(t);
  else
    images_[std::move(t)] = std::move(img);
}

void SetMapping::set_image(std::initializer_list<Element> tuple, ElementSet img) {
  set_image(std::span<const Element>(tuple.begin(), tuple.size()), std::move(img));
}

bool SetMapping::same_shape(const SetMapping& other) const {
  return n_ == other.n_ && k_ == other.k_ && mu_ == other.mu_ &&
         flags_ == other.flags_;
}

bool SetMapping::contained_in(const SetMapping& other) const {
  if (n_ != other.n_ || k_ != other.k_) return false;
  for (const auto& [t, img] : images_) {
    if (!img.subset_of(other.image(t))) return false;
  }
  return true;
}

SetMapping SetMapping::restricted_to(const ElementSet& dom,
                                     bool trim_images) const {
  SetMapping out(n_, k_, mu_, flags_);
  for (const auto& [t, img] : images_) {
    bool inside = std::all_of(t.begin(), t.end(),
                              [&](Element e) { return dom.contains(e); });
    if (!inside) continue;
    out.set_image(t, trim_images ? img.set_intersection(dom) : img);
  }
  return out;
}

}  // namespace setlab
