#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace setlab {

// One batch run of a named experiment.  Unset parameters fall back to
// per-experiment defaults; experiments that draw randomized corpora
// (construct, amalgamate, ladder) insist on an explicit seed so every report
// is replayable.
struct ExperimentSpec {
  std::string experiment;
  std::optional<int> n;              // ground size / scan size
  std::optional<int> k;              // arity
  std::optional<int> mu;             // image budget
  std::optional<int> m;              // target size / case count / ladder depth
  std::optional<std::uint64_t> seed;
  std::int64_t cap_nodes = 100'000'000;
  double cap_seconds = 60.0;
  std::string in_path;               // optional input mapping document
  std::string out_path;              // report destination; see write_report
  std::string format = "json";      // json | csv | text
};

struct CaseResult {
  std::string case_id;
  std::string params;
  std::string result;   // "pass" | "fail" | "limit"
  std::string value;    // headline value (optimum, verdict, ...)
  std::string witness;  // witness set / assignment / counterexample
  std::int64_t millis = 0;
};

struct ExperimentReport {
  std::string experiment;
  bool pass = false;      // every case passed
  std::int64_t millis = 0;
  std::vector<CaseResult> cases;
};

// Dispatches to the named experiment (freeset, construct, amalgamate, force,
// diagonalize, ramsey, ladder, position-lemma, acceptance).  Throws
// usage_error for unknown names or invalid parameters, parse_error for
// unreadable inputs.  A case that hits the node/time caps is reported with
// result "limit" (and fails the aggregate) rather than aborting the batch.
ExperimentReport run_experiment(const ExperimentSpec& spec);

// Renders json (canonical, sorted keys), csv (fixed columns experiment,
// case_id, params, result, value, witness, millis), or a text table.
std::string render_report(const ExperimentReport& report,
                          const std::string& format);

// Resolves the report destination: spec.out_path when given, else
// $SETLAB_OUT_DIR/<experiment>.<json|csv|txt> when the variable is set, else
// nowhere (the caller prints to stdout).  Writes the rendered report when a
// destination was resolved and returns its path, or "" for stdout.
std::string write_report(const ExperimentSpec& spec,
                         const ExperimentReport& report);

}  // namespace setlab
