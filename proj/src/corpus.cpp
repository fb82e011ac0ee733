#include "setlab/corpus.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <utility>
#include <vector>

#include "setlab/combinatorics.hpp"
#include "setlab/errors.hpp"
#include "setlab/rng.hpp"

namespace setlab {

namespace {

// Picks `count` distinct elements of [0, n) by a partial Fisher-Yates pass.
std::vector<Element> sample_distinct(int n, int count, Rng& rng) {
  std::vector<Element> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  for (int i = 0; i < count; ++i)
    std::swap(all[static_cast<std::size_t>(i)],
              all[static_cast<std::size_t>(i) + rng.below(static_cast<std::uint64_t>(n - i))]);
  all.resize(static_cast<std::size_t>(count));
  return all;
}

std::vector<Element> pick_subset(const std::vector<Element>& pool, double p,
                                 Rng& rng) {
  std::vector<Element> out;
  for (Element e : pool)
    if (rng.chance(p)) out.push_back(e);
  return out;
}

// Blocks one closed chain per violating 7-set until the condition is valid.
// Adding image elements only shrinks the family of unblocked 7-sets, so the
// loop terminates.  Repairs at tuples inside `root` are mirrored into `twin`
// to keep the two conditions' root restrictions identical; such repairs can
// never invalidate the twin (extra blocks only help).
void saturate_quad(const SetMapping& ambient, const ElementSet& support,
                   const ElementSet& root, SetMapping& g, SetMapping* twin) {
  for (;;) {
    QuadCheck chk = check_quad_condition(ambient, support, g);
    if (chk.valid) return;
    const auto& w = chk.witness->elements();
    bool in_root = chk.witness->subset_of(root);

    bool repaired = false;
    for_each_combination(7, 5, [&](std::span<const int> c) {
      std::array<Element, 4> outer{w[static_cast<std::size_t>(c[0])],
                                   w[static_cast<std::size_t>(c[1])],
                                   w[static_cast<std::size_t>(c[3])],
                                   w[static_cast<std::size_t>(c[4])]};
      Element mid = w[static_cast<std::size_t>(c[2])];
      if (!in_root) {
        // The witness leaves the root, so block a chain at a non-root tuple;
        // one always exists because any marked position of a 7-chain sits in
        // an outer slot of some 5-subchain.
        bool meets_branch = false;
        for (Element x : outer) meets_branch = meets_branch || !root.contains(x);
        if (!meets_branch) return true;
      }
      g.set_image(outer, g.image(outer).with(mid));
      if (in_root && twin) twin->set_image(outer, twin->image(outer).with(mid));
      repaired = true;
      return false;
    });
    if (!repaired)
      throw invariant_error("corpus repair found no chain to block");
  }
}

}  // namespace

SetMapping random_mapping(int n, int k, std::optional<int> budget,
                          SetMapping::Flags flags, std::uint64_t seed) {
  SetMapping f(n, k, budget, flags);
  Rng rng(seed);
  std::vector<Element> t(static_cast<std::size_t>(k));
  for_each_combination(n, k, [&](std::span<const int> c) {
    for (int i = 0; i < k; ++i) t[static_cast<std::size_t>(i)] = c[i];
    std::vector<Element> pool;
    if (flags.interval_bounded) {
      for (Element z = t[1] + 1; z < t[2]; ++z) pool.push_back(z);
    } else if (flags.initial_segment) {
      for (Element z = 0; z < t[0]; ++z) pool.push_back(z);
    } else {
      for (Element z = 0; z < n; ++z)
        if (!std::binary_search(t.begin(), t.end(), z)) pool.push_back(z);
    }
    int cap = static_cast<int>(pool.size());
    if (budget) cap = std::min(cap, *budget - 1);
    cap = std::min(cap, 3);
    int want = static_cast<int>(rng.below(static_cast<std::uint64_t>(cap) + 1));
    for (int i = 0; i < want; ++i)
      std::swap(pool[static_cast<std::size_t>(i)],
                pool[static_cast<std::size_t>(i) +
                     rng.below(pool.size() - static_cast<std::size_t>(i))]);
    pool.resize(static_cast<std::size_t>(want));
    f.set_image(t, ElementSet(std::move(pool)));
  });
  return f;
}

QuadDeltaInstance random_quad_delta(std::uint64_t seed) {
  Rng rng(seed);
  const int n = 14 + static_cast<int>(rng.below(5));
  const int root_size = static_cast<int>(rng.below(7));
  const int left_size = 1 + static_cast<int>(rng.below(4));
  const int right_size = 1 + static_cast<int>(rng.below(4));

  std::vector<Element> picked =
      sample_distinct(n, root_size + left_size + right_size, rng);
  ElementSet root(std::vector<Element>(picked.begin(), picked.begin() + root_size));
  ElementSet left_branch(std::vector<Element>(
      picked.begin() + root_size, picked.begin() + root_size + left_size));
  ElementSet right_branch(std::vector<Element>(
      picked.begin() + root_size + left_size, picked.end()));
  ElementSet sl = root.set_union(left_branch);
  ElementSet sr = root.set_union(right_branch);
  ElementSet all = sl.set_union(sr);

  // Ambient mapping, interval-bounded, drawn only on the tuples the pair can
  // ever consult (those inside the union support); everything else is empty.
  SetMapping ambient(n, 4, std::nullopt, {.interval_bounded = true});
  const auto& ae = all.elements();
  for_each_combination(all.size(), 4, [&](std::span<const int> c) {
    std::array<Element, 4> t{ae[static_cast<std::size_t>(c[0])],
                             ae[static_cast<std::size_t>(c[1])],
                             ae[static_cast<std::size_t>(c[2])],
                             ae[static_cast<std::size_t>(c[3])]};
    std::vector<Element> pool;
    for (Element z = t[1] + 1; z < t[2]; ++z) pool.push_back(z);
    ambient.set_image(t, ElementSet(pick_subset(pool, 0.5, rng)));
  });

  // Conditions: a shared root part (images inside the root, or the two
  // restrictions could never agree) plus independent branch parts, then the
  // validity repair.
  SetMapping gl(n, 4, std::nullopt, ambient.flags());
  SetMapping gr(n, 4, std::nullopt, ambient.flags());
  const auto& re = root.elements();
  for_each_combination(root.size(), 4, [&](std::span<const int> c) {
    std::array<Element, 4> t{re[static_cast<std::size_t>(c[0])],
                             re[static_cast<std::size_t>(c[1])],
                             re[static_cast<std::size_t>(c[2])],
                             re[static_cast<std::size_t>(c[3])]};
    std::vector<Element> pool =
        ambient.image(t).set_intersection(root).elements();
    ElementSet img(pick_subset(pool, 0.3, rng));
    gl.set_image(t, img);
    gr.set_image(t, img);
  });
  auto draw_branch_part = [&](SetMapping& g, const ElementSet& support) {
    const auto& se = support.elements();
    for_each_combination(support.size(), 4, [&](std::span<const int> c) {
      std::array<Element, 4> t{se[static_cast<std::size_t>(c[0])],
                               se[static_cast<std::size_t>(c[1])],
                               se[static_cast<std::size_t>(c[2])],
                               se[static_cast<std::size_t>(c[3])]};
      if (root.contains(t[0]) && root.contains(t[1]) && root.contains(t[2]) &&
          root.contains(t[3]))
        return;  // the shared root part stays as drawn
      std::vector<Element> pool =
          ambient.image(t).set_intersection(support).elements();
      g.set_image(t, ElementSet(pick_subset(pool, 0.3, rng)));
    });
  };
  draw_branch_part(gl, sl);
  draw_branch_part(gr, sr);

  saturate_quad(ambient, sl, root, gl, &gr);
  saturate_quad(ambient, sr, root, gr, &gl);

  QuadDeltaInstance out{std::move(ambient), {sl, std::move(gl)}, {sr, std::move(gr)}};
  if (!check_quad_condition(out.ambient, out.left.support, out.left.g).valid ||
      !check_quad_condition(out.ambient, out.right.support, out.right.g).valid)
    throw invariant_error("corpus generator produced an invalid quadruple condition");
  DeltaSystemPair pair = make_delta_system_pair(out.left.support, out.left.g,
                                                out.right.support, out.right.g);
  if (!verify_delta_preconditions(pair, out.ambient))
    throw invariant_error("corpus generator broke the delta-system preconditions");
  return out;
}

RankedDeltaInstance random_ranked_delta(std::uint64_t seed) {
  Rng rng(seed);
  const int n = 12 + static_cast<int>(rng.below(5));
  const int root_size = static_cast<int>(rng.below(5));
  const int left_size = 1 + static_cast<int>(rng.below(4));
  const int right_size = 1 + static_cast<int>(rng.below(4));

  std::vector<Element> picked =
      sample_distinct(n, root_size + left_size + right_size, rng);
  ElementSet root(std::vector<Element>(picked.begin(), picked.begin() + root_size));
  ElementSet left_branch(std::vector<Element>(
      picked.begin() + root_size, picked.begin() + root_size + left_size));
  ElementSet right_branch(std::vector<Element>(
      picked.begin() + root_size + left_size, picked.end()));
  ElementSet branches = left_branch.set_union(right_branch);
  ElementSet sl = root.set_union(left_branch);
  ElementSet sr = root.set_union(right_branch);
  ElementSet all = sl.set_union(sr);

  // Ambient pair mapping on the union support.  Root-pair images must avoid
  // both branches — that is the amalgamation precondition, not a repair.
  SetMapping ambient(n, 2, std::nullopt, {});
  const auto& ae = all.elements();
  for_each_combination(all.size(), 2, [&](std::span<const int> c) {
    std::array<Element, 2> t{ae[static_cast<std::size_t>(c[0])],
                             ae[static_cast<std::size_t>(c[1])]};
    bool root_pair = root.contains(t[0]) && root.contains(t[1]);
    std::vector<Element> pool;
    for (Element z = 0; z < n; ++z) {
      if (z == t[0] || z == t[1]) continue;
      if (root_pair && branches.contains(z)) continue;
      pool.push_back(z);
    }
    ambient.set_image(t, ElementSet(pick_subset(pool, 0.35, rng)));
  });

  SetMapping gl(n, 2, std::nullopt, {});
  SetMapping gr(n, 2, std::nullopt, {});
  const auto& re = root.elements();
  for_each_combination(root.size(), 2, [&](std::span<const int> c) {
    std::array<Element, 2> t{re[static_cast<std::size_t>(c[0])],
                             re[static_cast<std::size_t>(c[1])]};
    std::vector<Element> pool =
        ambient.image(t).set_intersection(root).elements();
    ElementSet img(pick_subset(pool, 0.4, rng));
    gl.set_image(t, img);
    gr.set_image(t, img);
  });
  auto draw_branch_part = [&](SetMapping& g, const ElementSet& support) {
    const auto& se = support.elements();
    for_each_combination(support.size(), 2, [&](std::span<const int> c) {
      std::array<Element, 2> t{se[static_cast<std::size_t>(c[0])],
                               se[static_cast<std::size_t>(c[1])]};
      if (root.contains(t[0]) && root.contains(t[1])) return;
      std::vector<Element> pool =
          ambient.image(t).set_intersection(support).elements();
      g.set_image(t, ElementSet(pick_subset(pool, 0.4, rng)));
    });
  };
  draw_branch_part(gl, sl);
  draw_branch_part(gr, sr);

  // Shared root ranks: canonical within the root plus headroom covering any
  // branch, so phase-1 floors on either side never exceed the fixed values.
  const int headroom = 4;
  RankFunction root_rank;
  for (const ElementSet& u : secured_subsets(ambient, gl.restricted_to(root), root)) {
    int above = 0;
    for (Element z : root)
      if (z > u.max()) ++above;
    root_rank[u.elements()] = above + headroom;
  }

  std::optional<RankFunction> rl = rank_completion(ambient, sl, gl, root_rank);
  std::optional<RankFunction> rr = rank_completion(ambient, sr, gr, root_rank);
  if (!rl || !rr)
    throw invariant_error("corpus generator could not rank a fresh condition");

  RankedDeltaInstance out{std::move(ambient),
                          {sl, std::move(gl), std::move(*rl)},
                          {sr, std::move(gr), std::move(*rr)}};
  if (!check_ranked_condition(out.ambient, out.left.support, out.left.g,
                              out.left.rank).valid ||
      !check_ranked_condition(out.ambient, out.right.support, out.right.g,
                              out.right.rank).valid)
    throw invariant_error("corpus generator produced an invalid ranked condition");
  DeltaSystemPair pair = make_delta_system_pair(out.left.support, out.left.g,
                                                out.right.support, out.right.g);
  if (!verify_delta_preconditions(pair, out.ambient))
    throw invariant_error("corpus generator broke the delta-system preconditions");
  return out;
}

}  // namespace setlab
