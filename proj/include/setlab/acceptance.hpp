#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace setlab {

struct CriterionResult {
  int index = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  std::int64_t millis = 0;
};

// The ten acceptance criteria, run in order with their time budgets pinned in
// code.  A criterion failure (including an exception or a blown budget) never
// stops the remaining ones.
std::vector<CriterionResult> run_acceptance_criteria();

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace setlab
