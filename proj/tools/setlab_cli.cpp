#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "setlab/errors.hpp"
#include "setlab/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"setlab: set-mapping and partition-relation experiment driver"};
  app.require_subcommand(1);

  setlab::ExperimentSpec spec;
  const struct {
    const char* name;
    const char* help;
  } experiments[] = {
      {"freeset",
       "maximum free set of a mapping (--in document, default interval mapping)"},
      {"construct", "verify the canonical constructions against their formulas"},
      {"amalgamate", "seeded amalgamation campaign over delta-system pairs"},
      {"force", "build conditions meeting include/kill goals, one per flavor"},
      {"diagonalize", "search singleton assignments killing every m-set"},
      {"ramsey", "pinned partition-relation anchors"},
      {"ladder", "the tower of partition thresholds"},
      {"position-lemma", "mark-placement scan over chain sizes"},
      {"acceptance", "the ten acceptance criteria"},
  };
  for (const auto& e : experiments) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    sub->add_option("--n", spec.n, "ground size / scan size");
    sub->add_option("--k", spec.k, "arity");
    sub->add_option("--mu", spec.mu, "image-size budget (images stay below it)");
    sub->add_option("--m", spec.m, "target size / case count / ladder depth");
    sub->add_option("--seed", spec.seed, "corpus seed (mandatory when randomized)");
    sub->add_option("--cap-nodes", spec.cap_nodes, "search node budget");
    sub->add_option("--cap-seconds", spec.cap_seconds, "search time budget");
    sub->add_option("--in", spec.in_path, "input mapping document");
    sub->add_option("--out", spec.out_path,
                    "report path (default $SETLAB_OUT_DIR/<experiment>, else stdout)");
    sub->add_option("--format", spec.format, "report format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sub->callback(
        [&spec, name = std::string(e.name)] { spec.experiment = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // help is a clean exit; bad usage is 2
  }

  try {
    setlab::ExperimentReport rep = setlab::run_experiment(spec);
    std::string path = setlab::write_report(spec, rep);
    if (path.empty())
      std::cout << setlab::render_report(rep, spec.format);
    else
      std::cerr << "report written to " << path << "\n";
    return rep.pass ? 0 : 1;
  } catch (const setlab::usage_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const setlab::parse_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
