// Runs the ten acceptance criteria and prints one line per criterion.
// Exit status 0 when every criterion passes, 1 otherwise.
#include <cstdio>

#include "setlab/acceptance.hpp"

int main() {
  std::vector<setlab::CriterionResult> results =
      setlab::run_acceptance_criteria();
  for (const setlab::CriterionResult& r : results) {
    std::printf("criterion %d (%s): %s — %s (%lld ms)\n", r.index,
                r.name.c_str(), r.pass ? "PASS" : "FAIL", r.detail.c_str(),
                static_cast<long long>(r.millis));
    std::fflush(stdout);
  }
  bool ok = setlab::all_passed(results);
  std::printf("acceptance: %s\n", ok ? "PASS" : "FAIL");
  return ok ? 0 : 1;
}
