#include "setlab/search.hpp"

#include <atomic>
#include <bit>
#include <thread>

#include "setlab/errors.hpp"

namespace setlab {

namespace {

using Mask = std::uint64_t;

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start).count();
}

// The mapping flattened to masks: only tuples with a nonempty image can block
// anything, so those are the only ones compiled.
struct Compiled {
  int n = 0;
  std::vector<std::pair<Mask, Mask>> tuples;  // (tuple mask, image mask)
  std::vector<std::vector<int>> at;           // at[e]: tuples containing e

  explicit Compiled(const SetMapping& f) : n(f.ground_size()), at(64) {
    if (n > 64)
      throw usage_error("ground set too large for the mask solver (max 64)");
    for (const auto& [t, img] : f.images()) {
      Mask tm = 0;
      for (Element e : t) tm |= Mask{1} << e;
      int idx = static_cast<int>(tuples.size());
      tuples.emplace_back(tm, img.to_mask());
      for (Element e : t) at[static_cast<std::size_t>(e)].push_back(idx);
    }
  }
};

// True when a has a smaller least element of the symmetric difference, i.e. a
// precedes b lexicographically among equal-size sets.
bool lex_less(Mask a, Mask b) {
  Mask d = a ^ b;
  return d != 0 && (a & (d & ~(d - 1))) != 0;
}

struct Budget {
  std::uint64_t max_nodes;
  std::chrono::steady_clock::time_point start;
  double max_seconds;
  std::atomic<std::uint64_t>* total_nodes;
  std::atomic<bool>* abort;

  // Called in batches from the hot loop; flips the shared abort flag once any
  // limit trips so sibling workers stop promptly too.
  void charge(std::uint64_t batch) const {
    std::uint64_t before = total_nodes->fetch_add(batch, std::memory_order_relaxed);
    if (before + batch > max_nodes ||
        elapsed_ms(start) > max_seconds * 1000.0)
      abort->store(true, std::memory_order_relaxed);
  }
};

struct Best {
  int size = 0;
  Mask mask = 0;
};

// One depth-first worker.  `shared` may carry a bound discovered by siblings:
// it is only ever used for strictly-less pruning, so it can shrink the node
// count but never change which optimum/witness this subtree reports.
struct Searcher {
  const Compiled& c;
  Budget budget;
  const std::atomic<int>* shared = nullptr;
  std::atomic<int>* publish = nullptr;

  Best best;
  std::uint64_t nodes = 0;

  bool dfs(Mask chosen, int count, Mask cand) {
    if ((++nodes & 0x3ff) == 0) {
      budget.charge(0x400);
      if (budget.abort->load(std::memory_order_relaxed)) return false;
    }
    int bound = count + std::popcount(cand);
    if (bound <= best.size) return true;
    if (shared && bound < shared->load(std::memory_order_relaxed)) return true;
    if (cand == 0) {
      // Strict improvement only: the first set of a given size reached by this
      // traversal is the lexicographically least one in the subtree.
      best = {count, chosen};
      if (publish) {
        int cur = publish->load(std::memory_order_relaxed);
        while (cur < count &&
               !publish->compare_exchange_weak(cur, count,
                                               std::memory_order_relaxed)) {
        }
      }
      return true;
    }
    int e = std::countr_zero(cand);
    Mask bit = Mask{1} << e;

    // Include e.  Completing a tuple inside chosen|bit kills the branch if any
    // image element is already chosen, and otherwise bars the image elements
    // from ever joining (they would never be re-checked on their own).
    Mask chosen2 = chosen | bit;
    Mask cand2 = cand & ~bit;
    bool feasible = true;
    for (int ti : c.at[static_cast<std::size_t>(e)]) {
      const auto& [tm, im] = c.tuples[static_cast<std::size_t>(ti)];
      if ((tm & ~chosen2) == 0) {
        if (im & chosen2) { feasible = false; break; }
        cand2 &= ~im;
      }
    }
    if (feasible && !dfs(chosen2, count + 1, cand2)) return false;
    return dfs(chosen, count, cand & ~bit);
  }
};

// Expands the tree breadth-first until there are enough independent subtrees
// to hand one slice per worker.  Nodes expanded here are charged like DFS
// nodes; completed leaves met during expansion are folded into `seed`.
struct Frontier {
  struct Node { Mask chosen; int count; Mask cand; };
  std::vector<Node> nodes;
  Best seed;

  Frontier(const Compiled& c, int want) {
    nodes.push_back({0, 0, c.n >= 64 ? ~Mask{0} : (Mask{1} << c.n) - 1});
    while (static_cast<int>(nodes.size()) < want) {
      // Expand the node with the most candidates to keep slices balanced.
      std::size_t pick = 0;
      for (std::size_t i = 1; i < nodes.size(); ++i)
        if (std::popcount(nodes[i].cand) > std::popcount(nodes[pick].cand))
          pick = i;
      Node nd = nodes[pick];
      if (nd.cand == 0) break;  // nothing left to split
      nodes.erase(nodes.begin() + static_cast<std::ptrdiff_t>(pick));

      int e = std::countr_zero(nd.cand);
      Mask bit = Mask{1} << e;
      Mask chosen2 = nd.chosen | bit;
      Mask cand2 = nd.cand & ~bit;
      bool feasible = true;
      for (int ti : c.at[static_cast<std::size_t>(e)]) {
        const auto& [tm, im] = c.tuples[static_cast<std::size_t>(ti)];
        if ((tm & ~chosen2) == 0) {
          if (im & chosen2) { feasible = false; break; }
          cand2 &= ~im;
        }
      }
      if (feasible) nodes.push_back({chosen2, nd.count + 1, cand2});
      nodes.push_back({nd.chosen, nd.count, nd.cand & ~bit});
    }
    for (const Node& nd : nodes)
      if (nd.cand == 0) consider(nd);
    std::erase_if(nodes, [](const Node& nd) { return nd.cand == 0; });
  }

  void consider(const Node& nd) {
    if (nd.count > seed.size ||
        (nd.count == seed.size && lex_less(nd.chosen, seed.mask)))
      seed = {nd.count, nd.chosen};
  }
};

void merge(Best& into, const Best& from) {
  if (from.size > into.size ||
      (from.size == into.size && from.size > 0 && lex_less(from.mask, into.mask)))
    into = from;
}

}  // namespace

SearchReport max_free_set(const SetMapping& f, const SearchLimits& limits) {
  auto start = std::chrono::steady_clock::now();
  Compiled c(f);
  std::atomic<std::uint64_t> total_nodes{0};
  std::atomic<bool> abort{false};
  Budget budget{limits.max_nodes, start, limits.max_seconds, &total_nodes, &abort};

  Best overall;
  if (limits.workers <= 1) {
    Searcher s{c, budget};
    Mask full = c.n >= 64 ? ~Mask{0} : (Mask{1} << c.n) - 1;
    s.dfs(0, 0, full);
    budget.charge(s.nodes & 0x3ff);  // charge the tail of the last batch
    overall = s.best;
  } else {
    Frontier frontier{c, limits.workers * 4};
    overall = frontier.seed;
    total_nodes.fetch_add(frontier.nodes.size());

    std::atomic<int> shared_best{overall.size};
    int w = limits.workers;
    std::vector<Best> results(static_cast<std::size_t>(w));
    std::vector<std::thread> pool;
    for (int t = 0; t < w; ++t) {
      pool.emplace_back([&, t]() {
        Searcher s{c, budget, &shared_best, &shared_best};
        // Fixed round-robin split: the partition does not depend on timing.
        for (std::size_t i = static_cast<std::size_t>(t);
             i < frontier.nodes.size(); i += static_cast<std::size_t>(w)) {
          const auto& nd = frontier.nodes[i];
          if (!s.dfs(nd.chosen, nd.count, nd.cand)) break;
        }
        budget.charge(s.nodes & 0x3ff);
        results[static_cast<std::size_t>(t)] = s.best;
      });
    }
    for (auto& th : pool) th.join();
    // Canonical merge: independent subtree winners compared by size then by
    // lexicographic order, so the report ignores scheduling.
    for (const Best& b : results) merge(overall, b);
  }

  if (abort.load())
    throw resource_limit_error("free-set search exceeded its budget",
                               total_nodes.load(), elapsed_ms(start) / 1000.0);

  SearchReport rep;
  rep.optimum = overall.size;
  rep.witness = ElementSet::from_mask(overall.mask);
  rep.nodes_explored = total_nodes.load();
  rep.millis = elapsed_ms(start);
  return rep;
}

std::vector<ElementSet> enumerate_free_sets(const SetMapping& f, int m,
                                            const SearchLimits& limits) {
  if (m < 0) throw usage_error("free-set size must be nonnegative");
  auto start = std::chrono::steady_clock::now();
  Compiled c(f);
  std::vector<ElementSet> out;
  std::uint64_t nodes = 0;

  // Lexicographic combination tree: each call extends `chosen` with one
  // element larger than all chosen so far, filtering blocked successors.
  auto rec = [&](auto&& self, Mask chosen, int count, Mask cand) -> void {
    if (++nodes > limits.max_nodes ||
        elapsed_ms(start) > limits.max_seconds * 1000.0)
      throw resource_limit_error("free-set enumeration exceeded its budget",
                                 nodes, elapsed_ms(start) / 1000.0);
    if (count == m) {
      out.push_back(ElementSet::from_mask(chosen));
      return;
    }
    if (count + std::popcount(cand) < m) return;
    Mask rest = cand;
    while (rest) {
      int e = std::countr_zero(rest);
      Mask bit = Mask{1} << e;
      rest &= ~bit;
      Mask chosen2 = chosen | bit;
      Mask cand2 = rest;  // only larger elements extend a combination
      bool feasible = true;
      for (int ti : c.at[static_cast<std::size_t>(e)]) {
        const auto& [tm, im] = c.tuples[static_cast<std::size_t>(ti)];
        if ((tm & ~chosen2) == 0) {
          if (im & chosen2) { feasible = false; break; }
          cand2 &= ~im;
        }
      }
      if (feasible) self(self, chosen2, count + 1, cand2);
    }
  };
  Mask full = c.n >= 64 ? ~Mask{0} : (Mask{1} << c.n) - 1;
  rec(rec, 0, 0, full);
  return out;
}

SearchReport oracle_max_free_set(const SetMapping& f) {
  auto start = std::chrono::steady_clock::now();
  const int n = f.ground_size();
  if (n > 20) throw usage_error("ground set too large for the oracle (max 20)");

  // Mark every superset of tuple+image-element as blocked, then sweep all 2^n
  // subsets.  No pruning anywhere: this is the reference the solver is held to.
  const Mask N = Mask{1} << n;
  std::vector<std::uint8_t> blocked(N, 0);
  for (const auto& [t, img] : f.images()) {
    Mask tm = 0;
    for (Element e : t) tm |= Mask{1} << e;
    for (Element i : img) {
      Mask base = tm | (Mask{1} << i);
      Mask rest = (N - 1) & ~base;
      for (Mask sub = rest;; sub = (sub - 1) & rest) {
        blocked[base | sub] = 1;
        if (sub == 0) break;
      }
    }
  }

  Best best;
  for (Mask m = 1; m < N; ++m) {
    if (blocked[m]) continue;
    int s = std::popcount(m);
    if (s > best.size || (s == best.size && lex_less(m, best.mask)))
      best = {s, m};
  }

  SearchReport rep;
  rep.optimum = best.size;
  rep.witness = ElementSet::from_mask(best.mask);
  rep.nodes_explored = N;
  rep.millis = elapsed_ms(start);
  return rep;
}

}  // namespace setlab
