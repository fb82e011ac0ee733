#include "setlab/predicates.hpp"

#include <array>

#include "setlab/combinatorics.hpp"
#include "setlab/errors.hpp"

namespace setlab {

namespace {

void check_in_ground(const SetMapping& f, const ElementSet& H, const char* what) {
  if (H.empty()) return;
  if (H.min() < 0 || H.max() >= f.ground_size())
    throw invariant_error(std::string(what) + " " + H.to_string() +
                          " leaves the ground set of size " +
                          std::to_string(f.ground_size()));
}

// Applies fn(designated_element, designated_tuple) to every chain of U for
// the given arity; fn returns false to stop (predicate failed).
template <typename Fn>
bool scan_chains(int arity, const ElementSet& U, Fn&& fn) {
  const auto& e = U.elements();
  const int m = U.size();
  if (arity == 4) {
    return for_each_combination(m, 5, [&](std::span<const int> c) {
      std::array<Element, 4> outer{e[static_cast<std::size_t>(c[0])],
                                   e[static_cast<std::size_t>(c[1])],
                                   e[static_cast<std::size_t>(c[3])],
                                   e[static_cast<std::size_t>(c[4])]};
      return fn(e[static_cast<std::size_t>(c[2])], std::span<const Element>(outer));
    });
  }
  if (arity == 2) {
    return for_each_combination(m, 3, [&](std::span<const int> c) {
      std::array<Element, 2> outer{e[static_cast<std::size_t>(c[1])],
                                   e[static_cast<std::size_t>(c[2])]};
      return fn(e[static_cast<std::size_t>(c[0])], std::span<const Element>(outer));
    });
  }
  throw usage_error("chain predicates support arity 2 and 4, not arity " +
                    std::to_string(arity));
}

}  // namespace

bool is_free(const SetMapping& f, const ElementSet& H) {
  check_in_ground(f, H, "candidate free set");
  const int k = f.arity();
  if (H.size() < k) return true;
  const auto& e = H.elements();
  std::vector<Element> t(static_cast<std::size_t>(k));
  return for_each_combination(H.size(), k, [&](std::span<const int> c) {
    for (int i = 0; i < k; ++i)
      t[static_cast<std::size_t>(i)] = e[static_cast<std::size_t>(c[i])];
    return !f.image(t).intersects(H);
  });
}

bool is_chain_closed(const SetMapping& f, const ElementSet& U) {
  check_in_ground(f, U, "set");
  return scan_chains(f.arity(), U,
                     [&](Element mid, std::span<const Element> outer) {
                       return f.image(outer).contains(mid);
                     });
}

bool is_chain_free(const SetMapping& g, const ElementSet& U) {
  check_in_ground(g, U, "set");
  return scan_chains(g.arity(), U,
                     [&](Element mid, std::span<const Element> outer) {
                       return !g.image(outer).contains(mid);
                     });
}

bool is_secured(const SetMapping& F, const SetMapping& g, const ElementSet& u) {
  if (F.arity() != 2 || g.arity() != 2)
    throw usage_error("secured sets are defined for arity-2 mappings");
  return u.size() >= 3 && is_chain_closed(F, u) && is_chain_free(g, u);
}

bool reduced_free(const SetMapping& f, const ElementSet& H) {
  if (f.arity() == 4 && !f.flags().interval_bounded)
    throw usage_error("freeness reduction needs the interval_bounded flag");
  if (f.arity() == 2 && !f.flags().initial_segment)
    throw usage_error("freeness reduction needs the initial_segment flag");
  if (f.arity() != 4 && f.arity() != 2)
    throw usage_error("freeness reduction supports arity 2 and 4 only");
  // For structurally bounded mappings a blocked subset always yields a blocked
  // chain, so freeness collapses to chain-freeness of H under f itself.
  return is_chain_free(f, H);
}

}  // namespace setlab
