#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sigw::reproduce {

struct CriterionResult {
  std::string name;
  std::string detail;
  bool pass = false;
};

// Runs the full verification battery at pinned tolerances: the constant-waste
// formula, stakes/difficulty invariance, cost-curve invariance, the
// constant-waste characterization, incentive compatibility, the tournament
// Monte Carlo, the Tullock comparison, the all-pay equivalence, the
// stakes-dependent families, and the envelope condition.
std::vector<CriterionResult> run_all(std::uint64_t seed = 0x5157A5ull);

bool all_pass(const std::vector<CriterionResult>&);

}  // namespace sigw::reproduce
