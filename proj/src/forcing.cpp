#include "setlab/forcing.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <climits>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>

#include "setlab/combinatorics.hpp"
#include "setlab/errors.hpp"
#include "setlab/predicates.hpp"

namespace setlab {

namespace {

// Pascal table sized for the 64-element support cap; row n, column k <= 7.
const std::uint64_t* choose_row(int n) {
  static const auto table = [] {
    std::array<std::array<std::uint64_t, 8>, 65> t{};
    for (int i = 0; i <= 64; ++i)
      for (int j = 0; j <= 7; ++j) t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = binom(i, j);
    return t;
  }();
  return table[static_cast<std::size_t>(n)].data();
}

std::uint64_t rank5(const int* idx) {
  std::uint64_t r = 0;
  for (int j = 0; j < 5; ++j) r += choose_row(idx[j])[j + 1];
  return r;
}

// Shared shape/containment validation for all condition checkers.  Containment
// violations throw; they are never reported as mere invalidity.
void validate_condition(const SetMapping& ambient, const ElementSet& support,
                        const SetMapping& g, int arity) {
  if (ambient.arity() != arity || g.arity() != arity)
    throw usage_error("condition flavor requires arity " + std::to_string(arity));
  if (g.ground_size() != ambient.ground_size())
    throw invariant_error("condition mapping lives on a different ground set");
  if (!support.empty() &&
      (support.min() < 0 || support.max() >= ambient.ground_size()))
    throw invariant_error("support leaves the ground set");
  if (support.size() > 64)
    throw usage_error("support too large for condition checking (max 64)");
  for (const auto& [t, img] : g.images()) {
    for (Element e : t)
      if (!support.contains(e))
        throw invariant_error("condition assigns tuple " + tuple_to_string(t) +
                              " outside its support");
    if (!img.subset_of(ambient.image(t)))
      throw invariant_error("image of " + tuple_to_string(t) +
                            " is not contained in the ambient image");
    for (Element e : img)
      if (!support.contains(e))
        throw invariant_error("image of " + tuple_to_string(t) +
                              " leaves the support");
  }
}

// The 21 ways to pick 5 of 7 positions, fixed once.
const std::vector<std::array<int, 5>>& five_of_seven() {
  static const auto patterns = [] {
    std::vector<std::array<int, 5>> out;
    for_each_combination(7, 5, [&](std::span<const int> c) {
      out.push_back({c[0], c[1], c[2], c[3], c[4]});
    });
    return out;
  }();
  return patterns;
}

std::string set_to_key_string(const std::vector<Element>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(v[i]);
  }
  return s + "}";
}

}  // namespace

QuadCheck check_quad_condition(const SetMapping& ambient,
                               const ElementSet& support, const SetMapping& g) {
  validate_condition(ambient, support, g, 4);
  QuadCheck out;
  const int m = support.size();
  if (m < 7) return out;

  // Per-5-chain tables: closed under the ambient mapping, blocked by g.
  const auto& e = support.elements();
  std::vector<std::uint8_t> closed(binom(m, 5)), blocked(closed.size());
  std::array<Element, 4> outer;
  for_each_combination(m, 5, [&](std::span<const int> c) {
    outer = {e[static_cast<std::size_t>(c[0])], e[static_cast<std::size_t>(c[1])],
             e[static_cast<std::size_t>(c[3])], e[static_cast<std::size_t>(c[4])]};
    Element mid = e[static_cast<std::size_t>(c[2])];
    std::uint64_t r = colex_rank(c);
    closed[r] = ambient.image(outer).contains(mid) ? 1 : 0;
    blocked[r] = g.image(outer).contains(mid) ? 1 : 0;
  });

  // First (lexicographically least) 7-subset whose 21 chains are all closed
  // and none blocked.
  for_each_combination(m, 7, [&](std::span<const int> c) {
    int idx[5];
    for (const auto& pat : five_of_seven()) {
      for (int j = 0; j < 5; ++j) idx[j] = c[pat[static_cast<std::size_t>(j)]];
      std::uint64_t r = rank5(idx);
      if (!closed[r] || blocked[r]) return true;  // this 7-set is harmless
    }
    std::vector<Element> v;
    for (int i : c) v.push_back(e[static_cast<std::size_t>(i)]);
    out.valid = false;
    out.witness = ElementSet(std::move(v));
    return false;
  });
  return out;
}

std::vector<ElementSet> secured_subsets(const SetMapping& ambient,
                                        const SetMapping& g,
                                        const ElementSet& support) {
  if (ambient.arity() != 2 || g.arity() != 2)
    throw usage_error("secured sets are defined for arity-2 mappings");
  if (support.size() > 64)
    throw usage_error("support too large for secured-set enumeration (max 64)");
  const int m = support.size();
  const auto& e = support.elements();

  // Local masks over support indices: bit a of fmask[b*m+z] says e[a] lies in
  // ambient({e[b], e[z]}).
  std::vector<std::uint64_t> fmask(static_cast<std::size_t>(m) * m, 0);
  std::vector<std::uint64_t> gmask(fmask.size());
  for (int b = 0; b < m; ++b) {
    for (int z = b + 1; z < m; ++z) {
      std::uint64_t fm = 0, gm = 0;
      for (int a = 0; a < b; ++a) {
        Element x = e[static_cast<std::size_t>(a)];
        if (ambient.image({e[static_cast<std::size_t>(b)], e[static_cast<std::size_t>(z)]}).contains(x))
          fm |= std::uint64_t{1} << a;
        if (g.image({e[static_cast<std::size_t>(b)], e[static_cast<std::size_t>(z)]}).contains(x))
          gm |= std::uint64_t{1} << a;
      }
      fmask[static_cast<std::size_t>(b) * m + z] = fm;
      gmask[static_cast<std::size_t>(b) * m + z] = gm;
    }
  }

  // Grow candidates element by element; a failed triple condition persists in
  // every superset, so the branch dies with it.  Prefixes of secured sets are
  // secured, which is why collecting along the way captures everything.
  std::vector<ElementSet> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (cur.size() >= 3) {
      std::vector<Element> v;
      for (int i : cur) v.push_back(e[static_cast<std::size_t>(i)]);
      out.push_back(ElementSet(std::move(v)));
    }
    for (int z = start; z < m; ++z) {
      bool ok = true;
      for (std::size_t i = 0; ok && i + 1 < cur.size(); ++i) {
        for (std::size_t j = i + 1; j < cur.size(); ++j) {
          int a = cur[i], b = cur[j];
          std::uint64_t fm = fmask[static_cast<std::size_t>(b) * m + z];
          std::uint64_t gm = gmask[static_cast<std::size_t>(b) * m + z];
          if (!((fm >> a) & 1) || ((gm >> a) & 1)) { ok = false; break; }
        }
      }
      if (!ok) continue;
      cur.push_back(z);
      self(self, z + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

RankedCheck check_ranked_condition(const SetMapping& ambient,
                                   const ElementSet& support,
                                   const SetMapping& g,
                                   const RankFunction& rank) {
  validate_condition(ambient, support, g, 2);
  RankedCheck out;
  std::vector<ElementSet> secured = secured_subsets(ambient, g, support);

  std::set<std::vector<Element>> keys;
  for (const ElementSet& u : secured) keys.insert(u.elements());
  for (const ElementSet& u : secured) {
    if (!rank.count(u.elements())) {
      out.valid = false;
      out.reason = "secured set " + u.to_string() + " missing from the rank domain";
      return out;
    }
  }
  for (const auto& [u, r] : rank) {
    if (!keys.count(u)) {
      out.valid = false;
      out.reason = "rank assigned to non-secured set " + set_to_key_string(u);
      return out;
    }
    if (r < 0) {
      out.valid = false;
      out.reason = "negative rank on " + set_to_key_string(u);
      return out;
    }
  }

  // Proper end-extensions of a sorted set are exactly its proper prefixes'
  // extensions, so scanning (prefix, whole) pairs covers the decrease law.
  for (const ElementSet& v : secured) {
    const auto& ve = v.elements();
    for (int len = 3; len < v.size(); ++len) {
      std::vector<Element> u(ve.begin(), ve.begin() + len);
      int ru = rank.at(u), rv = rank.at(ve);
      if (ru <= rv) {
        out.valid = false;
        out.offending = {ElementSet(u), v};
        out.reason = "rank fails to decrease from " + set_to_key_string(u) +
                     " (" + std::to_string(ru) + ") to " + v.to_string() + " (" +
                     std::to_string(rv) + ")";
        return out;
      }
    }
  }
  return out;
}

PairCheck check_pair_condition(const SetMapping& ambient,
                               const ElementSet& support, const SetMapping& g) {
  validate_condition(ambient, support, g, 2);
  PairCheck out;
  for (const auto& [t, img] : g.images()) {
    if (img.size() > 1) {
      out.valid = false;
      out.reason = "image of " + tuple_to_string(t) + " has " +
                   std::to_string(img.size()) + " elements; at most one allowed";
      return out;
    }
  }
  return out;
}

std::optional<RankFunction> rank_completion(const SetMapping& ambient,
                                            const ElementSet& support,
                                            const SetMapping& g,
                                            const RankFunction& partial) {
  validate_condition(ambient, support, g, 2);
  std::vector<ElementSet> secured = secured_subsets(ambient, g, support);
  const int S = static_cast<int>(secured.size());

  std::map<std::vector<Element>, int> index;
  for (int i = 0; i < S; ++i) index[secured[static_cast<std::size_t>(i)].elements()] = i;

  std::vector<std::optional<int>> fixed(static_cast<std::size_t>(S));
  for (const auto& [u, r] : partial) {
    auto it = index.find(u);
    if (it == index.end())
      throw invariant_error("partial rank on non-secured set " +
                            set_to_key_string(u));
    if (r < 0) throw invariant_error("negative rank on " + set_to_key_string(u));
    fixed[static_cast<std::size_t>(it->second)] = r;
  }
  for (const auto& [v, rv] : partial) {
    for (std::size_t len = 3; len < v.size(); ++len) {
      std::vector<Element> u(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(len));
      auto it = partial.find(u);
      if (it != partial.end() && it->second <= rv)
        throw invariant_error("partial ranks already violate decrease between " +
                              set_to_key_string(u) + " and " + set_to_key_string(v));
    }
  }

  std::vector<int> by_size_desc(static_cast<std::size_t>(S));
  std::iota(by_size_desc.begin(), by_size_desc.end(), 0);
  std::stable_sort(by_size_desc.begin(), by_size_desc.end(), [&](int a, int b) {
    return secured[static_cast<std::size_t>(a)].size() >
           secured[static_cast<std::size_t>(b)].size();
  });

  // Phase 1, longest first: the smallest value each set can take, given that
  // every proper end-extension needs a strictly smaller value than it.  A
  // fixed (old) value below that floor certifies that no completion exists.
  std::vector<int> minimal(static_cast<std::size_t>(S), 0);
  std::vector<int> floor_need(static_cast<std::size_t>(S), 0);
  for (int i : by_size_desc) {
    const auto& ve = secured[static_cast<std::size_t>(i)].elements();
    if (fixed[static_cast<std::size_t>(i)]) {
      if (*fixed[static_cast<std::size_t>(i)] < floor_need[static_cast<std::size_t>(i)])
        return std::nullopt;
      minimal[static_cast<std::size_t>(i)] = *fixed[static_cast<std::size_t>(i)];
    } else {
      minimal[static_cast<std::size_t>(i)] = floor_need[static_cast<std::size_t>(i)];
    }
    for (std::size_t len = 3; len < ve.size(); ++len) {
      std::vector<Element> u(ve.begin(), ve.begin() + static_cast<std::ptrdiff_t>(len));
      int j = index.at(u);  // prefixes of secured sets are secured
      floor_need[static_cast<std::size_t>(j)] =
          std::max(floor_need[static_cast<std::size_t>(j)],
                   minimal[static_cast<std::size_t>(i)] + 1);
    }
  }

  // Phase 2, shortest first: hand out final values.  New sets prefer the
  // canonical rank (support elements above their max) and drop below a
  // prefix's value minus one when containment forces it; phase 1 guarantees
  // the result never dips under the minimal floor.
  const auto& se = support.elements();
  std::vector<int> final_value(static_cast<std::size_t>(S));
  for (auto it = by_size_desc.rbegin(); it != by_size_desc.rend(); ++it) {
    int i = *it;
    const auto& ve = secured[static_cast<std::size_t>(i)].elements();
    if (fixed[static_cast<std::size_t>(i)]) {
      final_value[static_cast<std::size_t>(i)] = *fixed[static_cast<std::size_t>(i)];
      continue;
    }
    int upper = INT_MAX;
    for (std::size_t len = 3; len < ve.size(); ++len) {
      std::vector<Element> u(ve.begin(), ve.begin() + static_cast<std::ptrdiff_t>(len));
      upper = std::min(upper, final_value[static_cast<std::size_t>(index.at(u))] - 1);
    }
    int canonical = static_cast<int>(se.end() - std::upper_bound(se.begin(), se.end(), ve.back()));
    final_value[static_cast<std::size_t>(i)] =
        std::min(upper, std::max(canonical, minimal[static_cast<std::size_t>(i)]));
  }

  RankFunction out;
  for (int i = 0; i < S; ++i)
    out[secured[static_cast<std::size_t>(i)].elements()] = final_value[static_cast<std::size_t>(i)];
  return out;
}

namespace {

// Mixed tuples are the ones the delta-system split assigns maximally: they
// touch both branches, so neither input condition has an opinion about them.
std::function<bool(std::span<const Element>)> mixed_predicate(
    const DeltaSystemPair& pair) {
  return [&pair](std::span<const Element> t) {
    bool l = false, r = false;
    for (Element x : t) {
      l = l || pair.left_branch.contains(x);
      r = r || pair.right_branch.contains(x);
    }
    return l && r;
  };
}

}  // namespace

QuadCondition amalgamate_quad(const SetMapping& ambient, const QuadCondition& p,
                              const QuadCondition& q) {
  if (!check_quad_condition(ambient, p.support, p.g).valid)
    throw invariant_error("left input condition is invalid");
  if (!check_quad_condition(ambient, q.support, q.g).valid)
    throw invariant_error("right input condition is invalid");
  DeltaSystemPair pair =
      make_delta_system_pair(p.support, p.g, q.support, q.g);
  if (!verify_delta_preconditions(pair, ambient))
    throw invariant_error("delta-system preconditions do not hold");

  ElementSet support = p.support.set_union(q.support);
  std::array<SupportedMapping, 2> olds{
      {{&p.g, &p.support}, {&q.g, &q.support}}};
  SetMapping g = maximal_extension(ambient, support, olds, mixed_predicate(pair));

  QuadCheck chk = check_quad_condition(ambient, support, g);
  if (!chk.valid)
    throw error("amalgamation defect: output invalid at 7-set " +
                chk.witness->to_string());
  return {std::move(support), std::move(g)};
}

RankedCondition amalgamate_ranked(const SetMapping& ambient,
                                  const RankedCondition& p,
                                  const RankedCondition& q) {
  if (!check_ranked_condition(ambient, p.support, p.g, p.rank).valid)
    throw invariant_error("left input condition is invalid");
  if (!check_ranked_condition(ambient, q.support, q.g, q.rank).valid)
    throw invariant_error("right input condition is invalid");
  DeltaSystemPair pair =
      make_delta_system_pair(p.support, p.g, q.support, q.g);
  if (!verify_delta_preconditions(pair, ambient))
    throw invariant_error("delta-system preconditions do not hold");

  // Both inputs must rank the root's secured sets identically, otherwise no
  // common extension of the two rank functions can exist.
  SetMapping root_g = p.g.restricted_to(pair.root);
  for (const ElementSet& u : secured_subsets(ambient, root_g, pair.root)) {
    if (p.rank.at(u.elements()) != q.rank.at(u.elements()))
      throw invariant_error("input ranks disagree on root-secured set " +
                            u.to_string());
  }

  ElementSet support = p.support.set_union(q.support);
  std::array<SupportedMapping, 2> olds{
      {{&p.g, &p.support}, {&q.g, &q.support}}};
  SetMapping g = maximal_extension(ambient, support, olds, mixed_predicate(pair));

  RankFunction partial = p.rank;
  partial.insert(q.rank.begin(), q.rank.end());
  std::optional<RankFunction> rank = rank_completion(ambient, support, g, partial);
  if (!rank) throw error("amalgamation defect: no rank extension exists");

  RankedCheck chk = check_ranked_condition(ambient, support, g, *rank);
  if (!chk.valid) throw error("amalgamation defect: " + chk.reason);
  return {std::move(support), std::move(g), std::move(*rank)};
}

std::optional<ElementSet> position_witness(const ElementSet& chain,
                                           Element mark0, Element mark1) {
  if (mark0 == mark1) throw usage_error("position witness needs distinct marks");
  if (!chain.contains(mark0) || !chain.contains(mark1))
    throw usage_error("marks must lie in the chain");
  const int m = chain.size();
  const auto& e = chain.elements();
  int p0 = static_cast<int>(std::lower_bound(e.begin(), e.end(), mark0) - e.begin());
  int p1 = static_cast<int>(std::lower_bound(e.begin(), e.end(), mark1) - e.begin());

  std::optional<ElementSet> found;
  for_each_combination(m, 5, [&](std::span<const int> c) {
    int s0 = -1, s1 = -1;
    for (int j = 0; j < 5; ++j) {
      if (c[j] == p0) s0 = j;
      if (c[j] == p1) s1 = j;
    }
    if (s0 < 0 || s1 < 0 || s0 == 2 || s1 == 2) return true;
    std::vector<Element> v;
    for (int i : c) v.push_back(e[static_cast<std::size_t>(i)]);
    found = ElementSet(std::move(v));
    return false;
  });
  return found;
}

PositionScan position_lemma_scan(int size) {
  if (size < 5) throw usage_error("position scan needs size >= 5");
  PositionScan out;
  ElementSet chain = ElementSet::range(size);
  for (int i = 0; i < size && out.holds; ++i) {
    for (int j = i + 1; j < size; ++j) {
      if (!position_witness(chain, i, j)) {
        out.holds = false;
        out.failing_marks = {i, j};
        break;
      }
    }
  }
  return out;
}

Goal Goal::include(Element alpha) {
  Goal g;
  g.kind = Kind::include_element;
  g.element = alpha;
  return g;
}

Goal Goal::kill(Element x0, Element x1, Element x2) {
  std::array<Element, 3> t{x0, x1, x2};
  std::sort(t.begin(), t.end());
  if (t[0] == t[1] || t[1] == t[2])
    throw usage_error("kill goal needs three distinct elements");
  Goal g;
  g.kind = Kind::kill_triple;
  g.triple = t;
  return g;
}

namespace {

ElementSet least_or_empty(const ElementSet& pool) {
  return pool.empty() ? ElementSet{} : ElementSet{pool.min()};
}

struct Builder {
  Flavor flavor;
  const SetMapping& ambient;
  ElementSet support;
  SetMapping g;
  RankFunction rank;

  Builder(Flavor fl, const SetMapping& amb)
      : flavor(fl), ambient(amb),
        g(amb.ground_size(), amb.arity(), amb.budget(), amb.flags()) {}

  std::string describe() const {
    return "condition with support " + support.to_string();
  }

  // Assigns one fresh tuple according to the flavor's maximal-extension rule.
  void assign_fresh(std::span<const Element> t, const ElementSet& next_support) {
    ElementSet maximal = ambient.image(t).set_intersection(next_support);
    g.set_image(t, flavor == Flavor::singleton_pair ? least_or_empty(maximal)
                                                    : maximal);
  }

  // Extends the support by `add`, assigning every tuple that meets the new
  // elements.  `forced` overrides one pair's image (the kill-goal target).
  void extend(const ElementSet& add,
              const std::optional<std::pair<std::array<Element, 2>, Element>>&
                  forced = std::nullopt) {
    ElementSet fresh = add.set_difference(support);
    if (fresh.empty()) return;
    ElementSet next = support.set_union(fresh);
    const auto& e = next.elements();
    const int k = ambient.arity();
    std::vector<Element> t(static_cast<std::size_t>(k));
    for_each_combination(next.size(), k, [&](std::span<const int> c) {
      bool meets_fresh = false;
      for (int i = 0; i < k; ++i) {
        t[static_cast<std::size_t>(i)] = e[static_cast<std::size_t>(c[i])];
        meets_fresh = meets_fresh || fresh.contains(t[static_cast<std::size_t>(i)]);
      }
      if (!meets_fresh) return;
      if (forced && k == 2 && t[0] == (*forced).first[0] &&
          t[1] == (*forced).first[1]) {
        g.set_image(t, ElementSet{(*forced).second});
        return;
      }
      assign_fresh(t, next);
    });
    support = std::move(next);

    // Re-establish the flavor invariant.  Both re-checks are expected to pass
    // by construction; a failure here is a defect worth halting on.
    if (flavor == Flavor::quadruple) {
      QuadCheck chk = check_quad_condition(ambient, support, g);
      if (!chk.valid)
        throw error("generic build defect: invalid at 7-set " +
                    chk.witness->to_string() + " in " + describe());
    } else if (flavor == Flavor::ranked_pair) {
      std::optional<RankFunction> next_rank =
          rank_completion(ambient, support, g, rank);
      if (!next_rank)
        throw error("generic build defect: no rank extension in " + describe());
      rank = std::move(*next_rank);
    }
  }
};

}  // namespace

BuildResult generic_build(Flavor flavor, const SetMapping& ambient,
                          const ElementSet& universe, std::vector<Goal> goals) {
  const int want_arity = flavor == Flavor::quadruple ? 4 : 2;
  if (ambient.arity() != want_arity)
    throw usage_error("flavor expects an ambient mapping of arity " +
                      std::to_string(want_arity));

  std::vector<Element> includes;
  std::vector<Goal> kills;
  for (const Goal& goal : goals) {
    if (goal.kind == Goal::Kind::include_element) {
      if (!universe.contains(goal.element))
        throw usage_error("inclusion goal " + std::to_string(goal.element) +
                          " outside the universe");
      includes.push_back(goal.element);
    } else {
      if (flavor != Flavor::singleton_pair)
        throw usage_error("kill goals apply to the singleton-pair flavor only");
      for (Element x : goal.triple)
        if (!universe.contains(x))
          throw usage_error("kill goal element " + std::to_string(x) +
                            " outside the universe");
      kills.push_back(goal);
    }
  }
  std::sort(includes.begin(), includes.end());
  includes.erase(std::unique(includes.begin(), includes.end()), includes.end());

  Builder b(flavor, ambient);
  for (Element alpha : includes) b.extend(ElementSet{alpha});

  for (const Goal& goal : kills) {
    const auto& t = goal.triple;
    std::array<Element, 2> target{t[1], t[2]};
    if (b.support.contains(t[1]) && b.support.contains(t[2])) {
      // The pair is already committed (the flavor keeps g total on its
      // support); only a matching prior value satisfies the goal.
      if (b.g.image({t[1], t[2]}) == ElementSet{t[0]}) continue;
      throw error("kill goal (" + std::to_string(t[0]) + ", " +
                  std::to_string(t[1]) + ", " + std::to_string(t[2]) +
                  ") unreachable: pair already assigned " +
                  b.g.image({t[1], t[2]}).to_string() + " in " + b.describe());
    }
    if (!ambient.image({t[1], t[2]}).contains(t[0]))
      throw error("kill goal (" + std::to_string(t[0]) + ", " +
                  std::to_string(t[1]) + ", " + std::to_string(t[2]) +
                  ") unreachable: value not offered by the ambient mapping in " +
                  b.describe());
    b.extend(ElementSet{t[0], t[1], t[2]}, std::make_pair(target, t[0]));
  }

  BuildResult out{b.support, std::move(b.g), std::move(b.rank), {}};
  if (flavor == Flavor::singleton_pair) {
    const auto& e = out.support.elements();
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t j = i + 1; j < e.size(); ++j)
        if (out.mapping.image({e[i], e[j]}).empty())
          out.empty_pairs.push_back({e[i], e[j]});
  }
  return out;
}

DiagonalizeResult diagonalize(const SetMapping& ambient, int m,
                              const SearchLimits& limits) {
  if (ambient.arity() != 2)
    throw usage_error("diagonalization needs an arity-2 ambient mapping");
  if (m < 3) throw usage_error("diagonalization needs m >= 3");
  const int n = ambient.ground_size();

  struct Pair {
    Element x, y;
    std::vector<Element> values;  // ascending; the empty choice comes last
    std::vector<int> msets;
  };
  std::vector<Pair> pairs;
  std::vector<int> pair_index(static_cast<std::size_t>(n) * n, -1);
  for (Element x = 0; x < n; ++x) {
    for (Element y = x + 1; y < n; ++y) {
      pair_index[static_cast<std::size_t>(x) * n + y] =
          static_cast<int>(pairs.size());
      pairs.push_back({x, y, ambient.image({x, y}).elements(), {}});
    }
  }

  // Covering constraints: every m-subset must contain a killed pair, i.e. a
  // pair whose chosen value also lies in the subset.
  struct Constraint {
    std::vector<Element> members;
    int remaining = 0;
    int killed = 0;
  };
  std::vector<Constraint> msets;
  if (m <= n) {
    for_each_combination(n, m, [&](std::span<const int> c) {
      Constraint cs;
      cs.members.assign(c.begin(), c.end());
      msets.push_back(std::move(cs));
    });
    for (int ms = 0; ms < static_cast<int>(msets.size()); ++ms) {
      auto& cs = msets[static_cast<std::size_t>(ms)];
      for (std::size_t i = 0; i + 1 < cs.members.size(); ++i)
        for (std::size_t j = i + 1; j < cs.members.size(); ++j) {
          int p = pair_index[static_cast<std::size_t>(cs.members[i]) * n +
                             cs.members[j]];
          pairs[static_cast<std::size_t>(p)].msets.push_back(ms);
          ++cs.remaining;
        }
    }
  }

  DiagonalizeResult result;
  auto start = std::chrono::steady_clock::now();
  std::vector<Element> assignment(pairs.size(), -1);  // -1 = empty image

  auto in_members = [](const std::vector<Element>& mem, Element v) {
    return std::binary_search(mem.begin(), mem.end(), v);
  };

  // Values ascending with the empty choice last, pairs in lexicographic
  // order: the first complete assignment is the least one.
  auto rec = [&](auto&& self, std::size_t p) -> bool {
    if (p == pairs.size()) return true;
    const Pair& pr = pairs[p];
    for (std::size_t vi = 0; vi <= pr.values.size(); ++vi) {
      Element v = vi < pr.values.size() ? pr.values[vi] : -1;
      if (++result.nodes > limits.max_nodes ||
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                  .count() > limits.max_seconds)
        throw resource_limit_error("diagonalization exceeded its budget",
                                   result.nodes, limits.max_seconds);
      bool conflict = false;
      for (int ms : pr.msets) {
        auto& cs = msets[static_cast<std::size_t>(ms)];
        --cs.remaining;
        if (v >= 0 && in_members(cs.members, v)) ++cs.killed;
        if (cs.remaining == 0 && cs.killed == 0) conflict = true;
      }
      if (!conflict) {
        assignment[p] = v;
        if (self(self, p + 1)) return true;
      }
      for (int ms : pr.msets) {
        auto& cs = msets[static_cast<std::size_t>(ms)];
        ++cs.remaining;
        if (v >= 0 && in_members(cs.members, v)) --cs.killed;
      }
    }
    return false;
  };

  if (rec(rec, 0)) {
    result.satisfiable = true;
    SetMapping g(n, 2, std::nullopt, ambient.flags());
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      if (assignment[p] >= 0)
        g.set_image({pairs[p].x, pairs[p].y}, ElementSet{assignment[p]});
      else
        result.empty_pairs.push_back({pairs[p].x, pairs[p].y});
    }
    result.mapping = std::move(g);
  }
  return result;
}

}  // namespace setlab
