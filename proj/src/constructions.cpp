#include "setlab/constructions.hpp"

#include <algorithm>

#include "setlab/combinatorics.hpp"
#include "setlab/errors.hpp"
#include "setlab/rng.hpp"

namespace setlab {

SetMapping interval_mapping(int n) {
  if (n < 4) throw usage_error("interval mapping needs n >= 4");
  SetMapping f(n, 4, std::nullopt, {.interval_bounded = true});
  for_each_combination(n, 4, [&](std::span<const int> c) {
    std::vector<Element> inside;
    for (Element e = c[1] + 1; e < c[2]; ++e) inside.push_back(e);
    if (inside.empty()) return;
    std::vector<Element> t(c.begin(), c.end());
    f.set_image(t, ElementSet(std::move(inside)));
  });
  return f;
}

SetMapping prefix_mapping(int n) {
  if (n < 2) throw usage_error("prefix mapping needs n >= 2");
  SetMapping f(n, 2, std::nullopt, {.initial_segment = true});
  for (Element x = 1; x < n; ++x) {
    std::vector<Element> below;
    for (Element e = 0; e < x; ++e) below.push_back(e);
    ElementSet img(below);
    for (Element y = x + 1; y < n; ++y) f.set_image({x, y}, img);
  }
  return f;
}

SetMapping complete_pair_mapping(int n) {
  if (n < 2) throw usage_error("complete pair mapping needs n >= 2");
  SetMapping f(n, 2);
  ElementSet ground = ElementSet::range(n);
  for (Element x = 0; x < n; ++x)
    for (Element y = x + 1; y < n; ++y)
      f.set_image({x, y}, ground.set_difference(ElementSet{x, y}));
  return f;
}

EnumerationScheme::EnumerationScheme(int n, std::vector<std::vector<Element>> orders)
    : n_(n), orders_(std::move(orders)) {
  if (n_ < 1) throw invariant_error("enumeration scheme needs n >= 1");
  if (static_cast<int>(orders_.size()) != n_)
    throw invariant_error("enumeration scheme needs one order per element");
  for (Element x = 0; x < n_; ++x) {
    const auto& ord = orders_[static_cast<std::size_t>(x)];
    if (static_cast<int>(ord.size()) != x)
      throw invariant_error("order of " + std::to_string(x) + " must list the " +
                            std::to_string(x) + " elements below it");
    std::vector<bool> seen(static_cast<std::size_t>(x), false);
    for (Element e : ord) {
      if (e < 0 || e >= x || seen[static_cast<std::size_t>(e)])
        throw invariant_error("order of " + std::to_string(x) +
                              " is not a permutation of the elements below it");
      seen[static_cast<std::size_t>(e)] = true;
    }
  }
}

EnumerationScheme EnumerationScheme::identity(int n) {
  std::vector<std::vector<Element>> orders(static_cast<std::size_t>(n));
  for (Element x = 0; x < n; ++x)
    for (Element e = 0; e < x; ++e)
      orders[static_cast<std::size_t>(x)].push_back(e);
  return EnumerationScheme(n, std::move(orders));
}

EnumerationScheme EnumerationScheme::shuffled(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<Element>> orders(static_cast<std::size_t>(n));
  for (Element x = 0; x < n; ++x) {
    auto& ord = orders[static_cast<std::size_t>(x)];
    for (Element e = 0; e < x; ++e) ord.push_back(e);
    for (int i = x - 1; i > 0; --i)
      std::swap(ord[static_cast<std::size_t>(i)],
                ord[static_cast<std::size_t>(rng.below(i + 1))]);
  }
  return EnumerationScheme(n, std::move(orders));
}

const std::vector<Element>& EnumerationScheme::order_of(Element x) const {
  if (x < 0 || x >= n_)
    throw usage_error("element " + std::to_string(x) + " outside the scheme");
  return orders_[static_cast<std::size_t>(x)];
}

int EnumerationScheme::index_of(Element x, Element y) const {
  if (!(0 <= x && x < y && y < n_))
    throw usage_error("index_of needs 0 <= x < y < n");
  const auto& ord = orders_[static_cast<std::size_t>(y)];
  auto it = std::find(ord.begin(), ord.end(), x);
  return static_cast<int>(it - ord.begin());
}

SetMapping enumeration_mapping(const EnumerationScheme& scheme) {
  const int n = scheme.ground_size();
  SetMapping f(n, 2, std::nullopt, {.initial_segment = true});
  for (Element x = 1; x < n; ++x) {
    for (Element y = x + 1; y < n; ++y) {
      int cut = scheme.index_of(x, y);
      const auto& ord = scheme.order_of(x);
      std::vector<Element> img(ord.begin(),
                               ord.begin() + std::min<std::size_t>(
                                   static_cast<std::size_t>(cut) + 1, ord.size()));
      if (img.empty()) continue;
      f.set_image({x, y}, ElementSet(std::move(img)));
    }
  }
  return f;
}

std::vector<int> descent_chain(const EnumerationScheme& scheme, const ElementSet& H) {
  if (H.size() < 2) throw usage_error("descent chain needs at least two elements");
  std::vector<int> chain;
  for (int j = 0; j + 1 < H.size(); ++j)
    chain.push_back(scheme.index_of(H[j], H[j + 1]));
  return chain;
}

SetMapping maximal_extension(
    const SetMapping& ambient, const ElementSet& support,
    std::span<const SupportedMapping> old,
    const std::function<bool(std::span<const Element>)>& mixed) {
  const int k = ambient.arity();
  SetMapping out(ambient.ground_size(), k, ambient.budget(), ambient.flags());
  const auto& e = support.elements();
  std::vector<Element> t(static_cast<std::size_t>(k));
  for_each_combination(support.size(), k, [&](std::span<const int> c) {
    for (int i = 0; i < k; ++i)
      t[static_cast<std::size_t>(i)] = e[static_cast<std::size_t>(c[i])];
    if (mixed(t)) {
      out.set_image(t, ambient.image(t).set_intersection(support));
      return;
    }
    const ElementSet* value = nullptr;
    for (const SupportedMapping& om : old) {
      bool inside = std::all_of(t.begin(), t.end(), [&](Element x) {
        return om.support->contains(x);
      });
      if (!inside) continue;
      const ElementSet& v = om.mapping->image(t);
      if (value && *value != v)
        throw invariant_error("old mappings disagree on tuple " +
                              tuple_to_string(t));
      value = &v;
    }
    if (value && !value->empty()) out.set_image(t, *value);
  });
  return out;
}

DeltaSystemPair make_delta_system_pair(const ElementSet& left_support,
                                       const SetMapping& left,
                                       const ElementSet& right_support,
                                       const SetMapping& right) {
  ElementSet root = left_support.set_intersection(right_support);
  return DeltaSystemPair{root,
                         left_support.set_difference(root),
                         right_support.set_difference(root),
                         left_support,
                         right_support,
                         left,
                         right};
}

bool verify_delta_preconditions(const DeltaSystemPair& pair,
                                const SetMapping& ambient) {
  if (pair.left_branch.intersects(pair.right_branch)) return false;
  if (pair.root.intersects(pair.left_branch) ||
      pair.root.intersects(pair.right_branch))
    return false;
  if (!pair.left.contained_in(ambient) || !pair.right.contained_in(ambient))
    return false;
  if (pair.left.restricted_to(pair.root) != pair.right.restricted_to(pair.root))
    return false;
  if (ambient.arity() == 2) {
    // Root-pair values must stay clear of both branches, otherwise the merged
    // side could re-block sets the other side already accounted for.
    const auto& r = pair.root.elements();
    ElementSet branches = pair.left_branch.set_union(pair.right_branch);
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t j = i + 1; j < r.size(); ++j)
        if (ambient.image({r[i], r[j]}).intersects(branches)) return false;
  }
  return true;
}

}  // namespace setlab
