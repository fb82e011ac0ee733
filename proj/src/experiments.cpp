#include "setlab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <span>
#include <sstream>
#include <string>

#include "json.hpp"
#include "setlab/acceptance.hpp"
#include "setlab/combinatorics.hpp"
#include "setlab/constructions.hpp"
#include "setlab/corpus.hpp"
#include "setlab/errors.hpp"
#include "setlab/forcing.hpp"
#include "setlab/io.hpp"
#include "setlab/predicates.hpp"
#include "setlab/ramsey.hpp"
#include "setlab/rng.hpp"
#include "setlab/search.hpp"

namespace setlab {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                               t0)
      .count();
}

SearchLimits limits_of(const ExperimentSpec& spec) {
  if (spec.cap_nodes <= 0)
    throw usage_error("--cap-nodes must be positive");
  if (spec.cap_seconds <= 0.0)
    throw usage_error("--cap-seconds must be positive");
  SearchLimits lim;
  lim.max_nodes = static_cast<std::uint64_t>(spec.cap_nodes);
  lim.max_seconds = spec.cap_seconds;
  return lim;
}

std::uint64_t require_seed(const ExperimentSpec& spec) {
  if (!spec.seed)
    throw usage_error("experiment '" + spec.experiment +
                      "' draws a randomized corpus; --seed is required");
  return *spec.seed;
}

// Runs one case body, mapping resource-limit aborts to the distinct "limit"
// status and any other exception to a failure.  The body fills value/witness
// and may downgrade result to "fail" itself.
CaseResult run_case(std::string case_id, std::string params,
                    const std::function<void(CaseResult&)>& body) {
  CaseResult c;
  c.case_id = std::move(case_id);
  c.params = std::move(params);
  c.result = "pass";
  auto t0 = Clock::now();
  try {
    body(c);
  } catch (const resource_limit_error& e) {
    c.result = "limit";
    c.value = e.what();
  } catch (const std::exception& e) {
    c.result = "fail";
    c.value = std::string("exception: ") + e.what();
  }
  c.millis = elapsed_ms(t0);
  return c;
}

std::string bit_string(const Coloring& c) {
  std::string s;
  s.reserve(c.bits.size());
  for (std::uint8_t b : c.bits) s.push_back(b ? '1' : '0');
  return s;
}

void fail_case(CaseResult& c, const std::string& why) {
  c.result = "fail";
  c.value = why;
}

// ---------------------------------------------------------------- freeset --

void freeset(const ExperimentSpec& spec, ExperimentReport& rep) {
  SetMapping f = spec.in_path.empty()
                     ? interval_mapping(spec.n.value_or(12))
                     : parse_mapping_file(spec.in_path);
  SearchLimits lim = limits_of(spec);
  std::string params = "n=" + std::to_string(f.ground_size()) +
                       " k=" + std::to_string(f.arity());
  rep.cases.push_back(run_case("search", params, [&](CaseResult& c) {
    SearchReport r = max_free_set(f, lim);
    c.value = std::to_string(r.optimum);
    c.witness = r.witness.to_string();
    if (f.ground_size() <= 20) {
      SearchReport oracle = oracle_max_free_set(f);
      if (oracle.optimum != r.optimum || oracle.witness != r.witness)
        fail_case(c, "solver found " + std::to_string(r.optimum) +
                         " but the exhaustive oracle found " +
                         std::to_string(oracle.optimum));
    }
  }));
}

// -------------------------------------------------------------- construct --

void construct(const ExperimentSpec& spec, ExperimentReport& rep) {
  std::uint64_t seed = require_seed(spec);
  const int n = spec.n.value_or(8);
  if (n < 5) throw usage_error("construct needs --n of at least 5");

  rep.cases.push_back(run_case("interval-formula", "n=" + std::to_string(n),
                               [&](CaseResult& c) {
    SetMapping f = interval_mapping(n);
    int checked = 0;
    for_each_combination(n, 4, [&](std::span<const Element> t) {
      std::vector<Element> between;
      for (Element z = t[1] + 1; z < t[2]; ++z) between.push_back(z);
      if (f.image(t) != ElementSet(between)) {
        fail_case(c, "wrong image at " + tuple_to_string(t));
        return false;
      }
      ++checked;
      return true;
    });
    if (c.result == "pass") c.value = std::to_string(checked) + " tuples";
  }));

  rep.cases.push_back(run_case("prefix-formula", "n=" + std::to_string(n),
                               [&](CaseResult& c) {
    SetMapping f = prefix_mapping(n);
    int checked = 0;
    for_each_combination(n, 2, [&](std::span<const Element> t) {
      if (f.image(t) != ElementSet::range(t[0])) {
        fail_case(c, "wrong image at " + tuple_to_string(t));
        return false;
      }
      ++checked;
      return true;
    });
    if (c.result == "pass") c.value = std::to_string(checked) + " tuples";
  }));

  rep.cases.push_back(run_case("complete-formula", "n=" + std::to_string(n),
                               [&](CaseResult& c) {
    SetMapping f = complete_pair_mapping(n);
    int checked = 0;
    for_each_combination(n, 2, [&](std::span<const Element> t) {
      ElementSet expect =
          ElementSet::range(n).set_difference(ElementSet{t[0], t[1]});
      if (f.image(t) != expect) {
        fail_case(c, "wrong image at " + tuple_to_string(t));
        return false;
      }
      ++checked;
      return true;
    });
    if (c.result == "pass") c.value = std::to_string(checked) + " tuples";
  }));

  // The identity scheme enumerates each y as 0,1,...,y-1, so the entries
  // before x are exactly [0, x) and the mapping collapses to the prefix one.
  rep.cases.push_back(run_case("enumeration-identity", "n=" + std::to_string(n),
                               [&](CaseResult& c) {
    SetMapping built = enumeration_mapping(EnumerationScheme::identity(n));
    if (built != prefix_mapping(n))
      fail_case(c, "identity scheme does not rebuild the prefix mapping");
    else
      c.value = "matches prefix mapping";
  }));

  rep.cases.push_back(run_case(
      "enumeration-formula",
      "n=" + std::to_string(n) + " seed=" + std::to_string(seed),
      [&](CaseResult& c) {
        EnumerationScheme scheme = EnumerationScheme::shuffled(n, seed);
        SetMapping f = enumeration_mapping(scheme);
        int checked = 0;
        for_each_combination(n, 2, [&](std::span<const Element> t) {
          // image({x<y}) = the first index_of(x,y)+1 entries of the
          // enumeration below x, truncated to its length
          const std::vector<Element>& order = scheme.order_of(t[0]);
          std::size_t cut =
              std::min(static_cast<std::size_t>(scheme.index_of(t[0], t[1])) + 1,
                       order.size());
          std::vector<Element> expect(order.begin(), order.begin() + cut);
          if (f.image(t) != ElementSet(expect)) {
            fail_case(c, "wrong image at " + tuple_to_string(t));
            return false;
          }
          ++checked;
          return true;
        });
        if (c.result == "pass") c.value = std::to_string(checked) + " tuples";
      }));

  rep.cases.push_back(run_case(
      "descent-chain",
      "n=" + std::to_string(n) + " seed=" + std::to_string(seed),
      [&](CaseResult& c) {
        EnumerationScheme scheme = EnumerationScheme::shuffled(n, seed);
        SetMapping f = enumeration_mapping(scheme);
        int checked = 0;
        for (int m = 2; m <= n; ++m) {
          for (const ElementSet& h : enumerate_free_sets(f, m)) {
            std::vector<int> d = descent_chain(scheme, h);
            for (std::size_t j = 0; j + 1 < d.size(); ++j) {
              if (d[j] <= d[j + 1]) {
                fail_case(c, "free set " + h.to_string() +
                                 " has a non-decreasing descent step");
                return;
              }
            }
            ++checked;
          }
        }
        c.value = std::to_string(checked) + " free sets descend";
      }));
}

// ------------------------------------------------------------- amalgamate --

std::string check_quad_case(const QuadDeltaInstance& inst,
                            const QuadCondition& out) {
  if (!check_quad_condition(inst.ambient, out.support, out.g).valid)
    return "output fails its checker";
  if (out.support != inst.left.support.set_union(inst.right.support))
    return "support is not the union";
  if (out.g.restricted_to(inst.left.support) != inst.left.g ||
      out.g.restricted_to(inst.right.support) != inst.right.g)
    return "restriction does not reproduce an input";
  return "";
}

std::string check_ranked_case(const RankedDeltaInstance& inst,
                              const RankedCondition& out) {
  if (!check_ranked_condition(inst.ambient, out.support, out.g, out.rank).valid)
    return "output fails its checker";
  if (out.support != inst.left.support.set_union(inst.right.support))
    return "support is not the union";
  if (out.g.restricted_to(inst.left.support) != inst.left.g ||
      out.g.restricted_to(inst.right.support) != inst.right.g)
    return "restriction does not reproduce an input";
  for (const RankFunction* old : {&inst.left.rank, &inst.right.rank})
    for (const auto& [u, r] : *old) {
      auto it = out.rank.find(u);
      if (it == out.rank.end() || it->second != r)
        return "old ranks are not extended";
    }
  return "";
}

void amalgamate(const ExperimentSpec& spec, ExperimentReport& rep) {
  std::uint64_t seed = require_seed(spec);
  const int cases = spec.m.value_or(200);
  if (cases < 1) throw usage_error("amalgamate needs --m of at least 1");
  for (int i = 0; i < cases; ++i) {
    std::uint64_t case_seed = mix_seed(seed, static_cast<std::uint64_t>(i));
    rep.cases.push_back(run_case("quad-" + std::to_string(i),
                                 "seed=" + std::to_string(case_seed),
                                 [&](CaseResult& c) {
      QuadDeltaInstance inst = random_quad_delta(case_seed);
      QuadCondition out = amalgamate_quad(inst.ambient, inst.left, inst.right);
      std::string why = check_quad_case(inst, out);
      if (!why.empty()) {
        fail_case(c, why);
        return;
      }
      c.value = "ok";
      c.witness = out.support.to_string();
    }));
    rep.cases.push_back(run_case("ranked-" + std::to_string(i),
                                 "seed=" + std::to_string(case_seed),
                                 [&](CaseResult& c) {
      RankedDeltaInstance inst = random_ranked_delta(case_seed);
      RankedCondition out =
          amalgamate_ranked(inst.ambient, inst.left, inst.right);
      std::string why = check_ranked_case(inst, out);
      if (!why.empty()) {
        fail_case(c, why);
        return;
      }
      c.value = "ok";
      c.witness = out.support.to_string();
    }));
  }
}

// ------------------------------------------------------------------ force --

void force(const ExperimentSpec& spec, ExperimentReport& rep) {
  const int n = spec.n.value_or(10);
  if (n < 5) throw usage_error("force needs --n of at least 5");

  rep.cases.push_back(run_case("quadruple", "n=" + std::to_string(n),
                               [&](CaseResult& c) {
    SetMapping ambient = interval_mapping(n);
    std::vector<Goal> goals;
    ElementSet wanted;
    for (Element e = 0; e < n; e += 2) {
      goals.push_back(Goal::include(e));
      wanted = wanted.with(e);
    }
    BuildResult res = generic_build(Flavor::quadruple, ambient,
                                    ElementSet::range(n), goals);
    if (!wanted.subset_of(res.support))
      fail_case(c, "an include goal was missed");
    else if (!check_quad_condition(ambient, res.support, res.mapping).valid)
      fail_case(c, "built condition fails its checker");
    else {
      c.value = std::to_string(res.support.size()) + " elements";
      c.witness = res.support.to_string();
    }
  }));

  rep.cases.push_back(run_case("ranked", "n=" + std::to_string(n),
                               [&](CaseResult& c) {
    SetMapping ambient = prefix_mapping(n);
    std::vector<Goal> goals;
    ElementSet wanted;
    for (Element e = 1; e < n; e += 2) {
      goals.push_back(Goal::include(e));
      wanted = wanted.with(e);
    }
    BuildResult res = generic_build(Flavor::ranked_pair, ambient,
                                    ElementSet::range(n), goals);
    if (!wanted.subset_of(res.support))
      fail_case(c, "an include goal was missed");
    else if (!check_ranked_condition(ambient, res.support, res.mapping,
                                     res.rank)
                  .valid)
      fail_case(c, "built condition fails its checker");
    else {
      c.value = std::to_string(res.support.size()) + " elements, " +
                std::to_string(res.rank.size()) + " ranks";
      c.witness = res.support.to_string();
    }
  }));

  rep.cases.push_back(run_case("singleton", "n=" + std::to_string(n),
                               [&](CaseResult& c) {
    SetMapping ambient = complete_pair_mapping(n);
    std::vector<Goal> goals = {Goal::include(0), Goal::include(1),
                               Goal::include(2), Goal::kill(0, 3, 4)};
    BuildResult res = generic_build(Flavor::singleton_pair, ambient,
                                    ElementSet::range(n), goals);
    if (!ElementSet{0, 1, 2, 3, 4}.subset_of(res.support))
      fail_case(c, "a goal element was missed");
    else if (!check_pair_condition(ambient, res.support, res.mapping).valid)
      fail_case(c, "built condition fails its checker");
    else if (is_free(res.mapping, ElementSet{0, 3, 4}))
      fail_case(c, "the kill goal left its triple free");
    else {
      c.value = std::to_string(res.support.size()) + " elements";
      c.witness = res.support.to_string();
    }
  }));
}

// ------------------------------------------------------------ diagonalize --

void run_diagonalize(const ExperimentSpec& spec, ExperimentReport& rep) {
  const int n = spec.n.value_or(4);
  const int m = spec.m.value_or(3);
  if (m < 3) throw usage_error("diagonalize needs --m of at least 3");
  if (n < m) throw usage_error("diagonalize needs --n of at least --m");
  SearchLimits lim = limits_of(spec);
  std::string params = "n=" + std::to_string(n) + " m=" + std::to_string(m);

  auto attempt = [&](const SetMapping& ambient, CaseResult& c) {
    DiagonalizeResult r = diagonalize(ambient, m, lim);
    if (!r.satisfiable) {
      c.value = "unsat";
      return;
    }
    c.value = "sat";
    if (!r.mapping->contained_in(ambient)) {
      fail_case(c, "solution leaves the ambient mapping");
      return;
    }
    if (!enumerate_free_sets(*r.mapping, m).empty()) {
      fail_case(c, "solution leaves a free " + std::to_string(m) + "-set");
      return;
    }
    std::string w;
    for (const auto& [tuple, img] : r.mapping->images()) {
      if (!w.empty()) w += "; ";
      w += tuple_to_string(tuple) + "->" + img.to_string();
    }
    c.witness = w;
  };

  rep.cases.push_back(run_case("dense", params, [&](CaseResult& c) {
    attempt(complete_pair_mapping(n), c);
  }));
  rep.cases.push_back(run_case("prefix", params, [&](CaseResult& c) {
    attempt(prefix_mapping(n), c);
  }));
}

// ----------------------------------------------------------------- ramsey --

void ramsey(const ExperimentSpec&, ExperimentReport& rep) {
  struct Anchor {
    int a, b, c, r;
    bool expect_holds;
  };
  const Anchor anchors[] = {
      {6, 3, 3, 2, true},
      {5, 3, 3, 2, false},
      {7, 5, 7, 5, true},
      {6, 5, 7, 5, false},
  };
  for (const Anchor& an : anchors) {
    std::string id = "arrow-" + std::to_string(an.a) + "-" +
                     std::to_string(an.b) + "-" + std::to_string(an.c) + "-" +
                     std::to_string(an.r);
    rep.cases.push_back(run_case(id, "", [&](CaseResult& c) {
      ArrowVerdict v = arrow_check(an.a, an.b, an.c, an.r);
      c.value = v.holds ? "holds" : "fails";
      if (v.holds != an.expect_holds) {
        fail_case(c, std::string("expected ") +
                         (an.expect_holds ? "holds" : "fails") + ", got " +
                         c.value);
        return;
      }
      if (!v.holds) {
        if (!v.counterexample ||
            !verify_counterexample(*v.counterexample, an.b, an.c))
          fail_case(c, "counterexample does not re-verify");
        else
          c.witness = bit_string(*v.counterexample);
      }
    }));
  }
}

// ----------------------------------------------------------------- ladder --

void ladder(const ExperimentSpec& spec, ExperimentReport& rep) {
  std::uint64_t seed = require_seed(spec);
  const int depth = spec.m.value_or(1);
  if (depth < 0 || depth > 4)
    throw usage_error("ladder needs --m between 0 and 4");
  std::vector<LadderEntry> entries = t_ladder(depth, 16, seed);
  for (std::size_t level = 0; level < entries.size(); ++level) {
    const LadderEntry& e = entries[level];
    rep.cases.push_back(run_case(
        "t" + std::to_string(level), "seed=" + std::to_string(seed),
        [&](CaseResult& c) {
          c.value = std::to_string(e.value) + (e.exact ? " exact" : " bound");
          if (level == 0 && !(e.exact && e.value == 5))
            fail_case(c, "level 0 must be exactly 5");
          else if (level == 1 && !(e.exact && e.value == 7))
            fail_case(c, "level 1 must be exactly 7");
          else if (level >= 2 && (e.exact || e.value < 8))
            fail_case(c, "levels past 1 must be lower bounds of at least 8");
        }));
  }
}

// -------------------------------------------------------- position lemma --

void position_lemma(const ExperimentSpec& spec, ExperimentReport& rep) {
  const int upper = spec.n.value_or(10);
  if (upper < 7) throw usage_error("position-lemma needs --n of at least 7");
  for (int size = 5; size <= upper; ++size) {
    rep.cases.push_back(run_case("size-" + std::to_string(size), "",
                                 [&](CaseResult& c) {
      PositionScan scan = position_lemma_scan(size);
      if (scan.holds) {
        c.value = "holds";
        if (size < 7) fail_case(c, "expected a failure below size 7");
      } else {
        c.value = "fails at (" + std::to_string(scan.failing_marks->first) +
                  "," + std::to_string(scan.failing_marks->second) + ")";
        if (size >= 7) fail_case(c, "expected the scan to hold from size 7 on");
        else if (size == 6 && *scan.failing_marks != std::pair<int, int>{2, 3})
          fail_case(c, "size 6 must first fail at marks (2,3)");
      }
    }));
  }
}

// ------------------------------------------------------------- acceptance --

void acceptance(const ExperimentSpec&, ExperimentReport& rep) {
  for (const CriterionResult& r : run_acceptance_criteria()) {
    CaseResult c;
    c.case_id = std::to_string(r.index) + "-" + r.name;
    c.result = r.pass ? "pass" : "fail";
    c.value = r.detail;
    c.millis = r.millis;
    rep.cases.push_back(std::move(c));
  }
}

}  // namespace

ExperimentReport run_experiment(const ExperimentSpec& spec) {
  auto t0 = Clock::now();
  ExperimentReport rep;
  rep.experiment = spec.experiment;
  if (spec.experiment == "freeset")
    freeset(spec, rep);
  else if (spec.experiment == "construct")
    construct(spec, rep);
  else if (spec.experiment == "amalgamate")
    amalgamate(spec, rep);
  else if (spec.experiment == "force")
    force(spec, rep);
  else if (spec.experiment == "diagonalize")
    run_diagonalize(spec, rep);
  else if (spec.experiment == "ramsey")
    ramsey(spec, rep);
  else if (spec.experiment == "ladder")
    ladder(spec, rep);
  else if (spec.experiment == "position-lemma")
    position_lemma(spec, rep);
  else if (spec.experiment == "acceptance")
    acceptance(spec, rep);
  else
    throw usage_error("unknown experiment '" + spec.experiment + "'");

  rep.pass = true;
  for (const CaseResult& c : rep.cases)
    if (c.result != "pass") rep.pass = false;
  rep.millis = elapsed_ms(t0);
  return rep;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += "\"\"";
    else out.push_back(ch);
  }
  out += "\"";
  return out;
}

}  // namespace

std::string render_report(const ExperimentReport& report,
                          const std::string& format) {
  if (format == "json") {
    nlohmann::json doc;
    doc["experiment"] = report.experiment;
    doc["pass"] = report.pass;
    doc["millis"] = report.millis;
    nlohmann::json cases = nlohmann::json::array();
    for (const CaseResult& c : report.cases) {
      nlohmann::json row;
      row["case_id"] = c.case_id;
      row["params"] = c.params;
      row["result"] = c.result;
      row["value"] = c.value;
      row["witness"] = c.witness;
      row["millis"] = c.millis;
      cases.push_back(std::move(row));
    }
    doc["cases"] = std::move(cases);
    return doc.dump(2) + "\n";
  }
  if (format == "csv") {
    std::string out = "experiment,case_id,params,result,value,witness,millis\n";
    for (const CaseResult& c : report.cases) {
      out += csv_escape(report.experiment) + "," + csv_escape(c.case_id) + "," +
             csv_escape(c.params) + "," + csv_escape(c.result) + "," +
             csv_escape(c.value) + "," + csv_escape(c.witness) + "," +
             std::to_string(c.millis) + "\n";
    }
    return out;
  }
  if (format == "text") {
    std::ostringstream out;
    out << "experiment " << report.experiment << ": "
        << (report.pass ? "PASS" : "FAIL") << " (" << report.cases.size()
        << " cases, " << report.millis << " ms)\n";
    for (const CaseResult& c : report.cases) {
      out << "  " << c.case_id << ": " << c.result;
      if (!c.value.empty()) out << "  " << c.value;
      if (!c.witness.empty()) out << "  witness " << c.witness;
      if (!c.params.empty()) out << "  [" << c.params << "]";
      out << "  (" << c.millis << " ms)\n";
    }
    return out.str();
  }
  throw usage_error("unknown report format '" + format + "'");
}

std::string write_report(const ExperimentSpec& spec,
                         const ExperimentReport& report) {
  std::string rendered = render_report(report, spec.format);
  std::string path = spec.out_path;
  if (path.empty()) {
    const char* dir = std::getenv("SETLAB_OUT_DIR");
    if (dir != nullptr && *dir != '\0') {
      std::string ext = spec.format == "json"  ? ".json"
                        : spec.format == "csv" ? ".csv"
                                               : ".txt";
      path = std::string(dir) + "/" + report.experiment + ext;
    }
  }
  if (path.empty()) return "";
  write_text_file(path, rendered);
  return path;
}

}  // namespace setlab
