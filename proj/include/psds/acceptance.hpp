#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace psds::acceptance {

struct CriterionResult {
  int number = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the full acceptance suite, printing one pass/fail line per criterion.
/// Returns the per-criterion results; all_passed() gates the exit code.
std::vector<CriterionResult> run_all(std::ostream& os);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace psds::acceptance
