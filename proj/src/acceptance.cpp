#include "setlab/acceptance.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <functional>
#include <optional>

#include "setlab/constructions.hpp"
#include "setlab/corpus.hpp"
#include "setlab/errors.hpp"
#include "setlab/forcing.hpp"
#include "setlab/predicates.hpp"
#include "setlab/ramsey.hpp"
#include "setlab/rng.hpp"
#include "setlab/search.hpp"

namespace setlab {

namespace {

// Campaign master seeds.  Case i of a campaign always uses
// mix_seed(<campaign seed>, i) so individual cases can be replayed.
constexpr std::uint64_t kQuadSeed = 0x6a09e667f3bcc908ULL;
constexpr std::uint64_t kRankedSeed = 0xbb67ae8584caa73bULL;
constexpr std::uint64_t kSchemeSeed = 0x3c6ef372fe94f82bULL;
constexpr std::uint64_t kOracleSeed = 0xa54ff53a5f1d36f1ULL;
constexpr std::uint64_t kReductionSeed = 0x510e527fade682d1ULL;

struct Outcome {
  bool pass = true;
  std::string detail;
};

Outcome fail(std::string detail) { return {false, std::move(detail)}; }

Outcome ladder_exactness() {
  ArrowVerdict at7 = arrow_check(7, 5, 7, 5);
  ArrowVerdict at6 = arrow_check(6, 5, 7, 5);
  if (!at7.holds) return fail("arrow(7,5,7,5) unexpectedly fails");
  if (at6.holds) return fail("arrow(6,5,7,5) unexpectedly holds");
  if (!at6.counterexample || !verify_counterexample(*at6.counterexample, 5, 7))
    return fail("arrow(6,5,7,5) counterexample does not re-verify");
  return {true, "arrow(7,5,7,5) holds, arrow(6,5,7,5) fails"};
}

Outcome base_case_sharpness() {
  using Clock = std::chrono::steady_clock;
  for (int n = 5; n <= 20; ++n) {
    auto t0 = Clock::now();
    SetMapping f = interval_mapping(n);
    SearchReport rep = max_free_set(f);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  Clock::now() - t0)
                  .count();
    if (rep.optimum != 4)
      return fail("n=" + std::to_string(n) + " gives optimum " +
                  std::to_string(rep.optimum) + ", expected 4");
    if (ms >= 10'000)
      return fail("n=" + std::to_string(n) + " took " + std::to_string(ms) +
                  " ms, budget 10 s");
    if (n <= 14) {
      SearchReport oracle = oracle_max_free_set(f);
      if (oracle.optimum != rep.optimum || oracle.witness != rep.witness)
        return fail("oracle disagrees at n=" + std::to_string(n));
    }
  }
  return {true, "optimum 4 for every n in 5..20, oracle-confirmed to 14"};
}

Outcome position_minimality() {
  PositionScan seven = position_lemma_scan(7);
  PositionScan six = position_lemma_scan(6);
  if (!seven.holds) return fail("size-7 scan unexpectedly fails");
  if (six.holds) return fail("size-6 scan unexpectedly holds");
  if (!six.failing_marks || *six.failing_marks != std::pair<int, int>{2, 3})
    return fail("size-6 scan fails at the wrong mark pair");
  return {true, "holds at size 7, fails at size 6 with marks (2,3)"};
}

Outcome quad_amalgamation() {
  const int cases = 1000;
  for (int i = 0; i < cases; ++i) {
    std::string tag = "case " + std::to_string(i) + ": ";
    QuadDeltaInstance inst = random_quad_delta(mix_seed(kQuadSeed,
                                                        static_cast<std::uint64_t>(i)));
    QuadCondition out = amalgamate_quad(inst.ambient, inst.left, inst.right);
    if (!check_quad_condition(inst.ambient, out.support, out.g).valid)
      return fail(tag + "output fails its checker");
    if (out.support != inst.left.support.set_union(inst.right.support))
      return fail(tag + "support is not the union");
    if (out.g.restricted_to(inst.left.support) != inst.left.g)
      return fail(tag + "left restriction not reproduced");
    if (out.g.restricted_to(inst.right.support) != inst.right.g)
      return fail(tag + "right restriction not reproduced");
  }
  return {true, std::to_string(cases) + " instances amalgamated and re-checked"};
}

Outcome ranked_amalgamation() {
  const int cases = 1000;
  int new_secured_total = 0;
  for (int i = 0; i < cases; ++i) {
    std::string tag = "case " + std::to_string(i) + ": ";
    RankedDeltaInstance inst = random_ranked_delta(mix_seed(kRankedSeed,
                                                            static_cast<std::uint64_t>(i)));
    RankedCondition out = amalgamate_ranked(inst.ambient, inst.left, inst.right);
    if (!check_ranked_condition(inst.ambient, out.support, out.g, out.rank).valid)
      return fail(tag + "output fails its checker");
    if (out.g.restricted_to(inst.left.support) != inst.left.g ||
        out.g.restricted_to(inst.right.support) != inst.right.g)
      return fail(tag + "mapping restriction not reproduced");
    for (const auto& [u, r] : inst.left.rank) {
      auto it = out.rank.find(u);
      if (it == out.rank.end() || it->second != r)
        return fail(tag + "left ranks not extended");
    }
    for (const auto& [u, r] : inst.right.rank) {
      auto it = out.rank.find(u);
      if (it == out.rank.end() || it->second != r)
        return fail(tag + "right ranks not extended");
    }

    DeltaSystemPair pair =
        make_delta_system_pair(inst.left.support, inst.left.g,
                               inst.right.support, inst.right.g);
    for (const ElementSet& w :
         secured_subsets(inst.ambient, out.g, out.support)) {
      if (w.subset_of(inst.left.support) || w.subset_of(inst.right.support))
        continue;  // old secured set, handled by the rank-extension check
      ++new_secured_total;
      ElementSet minimum{w.min()};
      if (w.set_intersection(pair.left_branch) != minimum &&
          w.set_intersection(pair.right_branch) != minimum)
        return fail(tag + "new secured set " + w.to_string() +
                    " holds a branch point beyond its minimum");
      for (const RankFunction* old : {&inst.left.rank, &inst.right.rank}) {
        for (const auto& [u, r] : *old) {
          if (static_cast<int>(u.size()) >= w.size()) continue;
          if (std::equal(u.begin(), u.end(), w.begin()))
            return fail(tag + "new secured set " + w.to_string() +
                        " end-extends an old one");
        }
      }
    }
  }
  return {true, std::to_string(cases) + " instances ranked and re-checked (" +
                    std::to_string(new_secured_total) + " new secured sets)"};
}

Outcome descent_property() {
  const int cases = 100;
  const int n = 12;
  for (int i = 0; i < cases; ++i) {
    EnumerationScheme scheme =
        EnumerationScheme::shuffled(n, mix_seed(kSchemeSeed,
                                                static_cast<std::uint64_t>(i)));
    SetMapping f = enumeration_mapping(scheme);
    for (int m = 2; m <= n; ++m) {
      for (const ElementSet& h : enumerate_free_sets(f, m)) {
        std::vector<int> d = descent_chain(scheme, h);
        for (std::size_t j = 0; j + 1 < d.size(); ++j) {
          if (d[j] <= d[j + 1])
            return fail("scheme " + std::to_string(i) + ", free set " +
                        h.to_string() + " has a non-decreasing step");
        }
      }
    }
  }
  return {true, std::to_string(cases) + " schemes, every free set descends"};
}

Outcome diagonalization() {
  DiagonalizeResult sat = diagonalize(complete_pair_mapping(4), 3);
  if (!sat.satisfiable || !sat.mapping) return fail("dense instance came out UNSAT");
  if (!sat.mapping->contained_in(complete_pair_mapping(4)))
    return fail("solution leaves the ambient mapping");
  if (!enumerate_free_sets(*sat.mapping, 3).empty())
    return fail("solution leaves a free 3-set");
  DiagonalizeResult unsat = diagonalize(prefix_mapping(4), 3);
  if (unsat.satisfiable) return fail("prefix instance came out SAT");
  return {true, "dense 4-point instance SAT and verified; prefix instance UNSAT"};
}

Outcome oracle_equivalence() {
  const int cases = 200;
  for (int i = 0; i < cases; ++i) {
    int n = 6 + i % 9;
    int k = (i % 3 == 0) ? 1 : (i % 3 == 1) ? 2 : 4;
    SetMapping::Flags flags;
    if (k == 4 && i % 5 == 0) flags.interval_bounded = true;
    if (k == 2 && i % 5 == 0) flags.initial_segment = true;
    std::optional<int> mu;
    if (i % 4 == 3) mu = 3;
    SetMapping f = random_mapping(n, k, mu, flags,
                                  mix_seed(kOracleSeed, static_cast<std::uint64_t>(i)));
    SearchReport solver = max_free_set(f);
    SearchReport oracle = oracle_max_free_set(f);
    if (solver.optimum != oracle.optimum || solver.witness != oracle.witness)
      return fail("case " + std::to_string(i) + " (n=" + std::to_string(n) +
                  ", k=" + std::to_string(k) + "): solver " +
                  std::to_string(solver.optimum) + "/" +
                  solver.witness.to_string() + " vs oracle " +
                  std::to_string(oracle.optimum) + "/" +
                  oracle.witness.to_string());
  }
  return {true, std::to_string(cases) + " mappings, solver == oracle"};
}

Outcome reduction_equivalence() {
  const int cases = 50;
  const int n = 10;
  for (int i = 0; i < cases; ++i) {
    SetMapping f = random_mapping(n, 4, std::nullopt, {.interval_bounded = true},
                                  mix_seed(kReductionSeed,
                                           static_cast<std::uint64_t>(i)));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      if (std::popcount(mask) > 7) continue;
      ElementSet h = ElementSet::from_mask(mask);
      if (is_free(f, h) != reduced_free(f, h))
        return fail("mapping " + std::to_string(i) + ", subset " +
                    h.to_string() + ": the two characterizations disagree");
    }
  }
  return {true, std::to_string(cases) +
                    " mappings, all subsets of size <= 7 agree"};
}

Outcome ramsey_anchors() {
  ArrowVerdict hold = arrow_check(6, 3, 3, 2);
  if (!hold.holds) return fail("arrow(6,3,3,2) unexpectedly fails");
  ArrowVerdict refute = arrow_check(5, 3, 3, 2);
  if (refute.holds) return fail("arrow(5,3,3,2) unexpectedly holds");
  if (!refute.counterexample ||
      !verify_counterexample(*refute.counterexample, 3, 3))
    return fail("arrow(5,3,3,2) counterexample does not re-verify");
  return {true, "arrow(6,3,3,2) holds; arrow(5,3,3,2) fails, counterexample re-verified"};
}

}  // namespace

std::vector<CriterionResult> run_acceptance_criteria() {
  struct Entry {
    const char* name;
    std::int64_t budget_ms;  // 0 = no wall-clock requirement
    std::function<Outcome()> fn;
  };
  const Entry entries[] = {
      {"ladder-exactness", 60'000, ladder_exactness},
      {"base-case-sharpness", 0, base_case_sharpness},  // per-case budget inside
      {"position-minimality", 1'000, position_minimality},
      {"quad-amalgamation", 300'000, quad_amalgamation},
      {"ranked-amalgamation", 300'000, ranked_amalgamation},
      {"descent-property", 0, descent_property},
      {"diagonalization", 1'000, diagonalization},
      {"oracle-equivalence", 0, oracle_equivalence},
      {"reduction-equivalence", 0, reduction_equivalence},
      {"ramsey-anchors", 5'000, ramsey_anchors},
  };

  std::vector<CriterionResult> out;
  int index = 1;
  for (const Entry& entry : entries) {
    CriterionResult r;
    r.index = index++;
    r.name = entry.name;
    auto t0 = std::chrono::steady_clock::now();
    try {
      Outcome o = entry.fn();
      r.pass = o.pass;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - t0)
                   .count();
    if (r.pass && entry.budget_ms > 0 && r.millis > entry.budget_ms) {
      r.pass = false;
      r.detail += "; over the " + std::to_string(entry.budget_ms) + " ms budget";
    }
    out.push_back(std::move(r));
  }
  return out;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const CriterionResult& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace setlab
