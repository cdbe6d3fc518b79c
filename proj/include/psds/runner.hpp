#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "psds/config.hpp"

namespace psds {

struct RunResult {
  int exit_code = 0;  // 0 success, 1 predicate/verdict failure, 2 input error
  std::vector<std::string> artifacts;
};

/// Executes a parsed config: simulate / bifurcate / region / confirm / verify.
/// Artifacts land in output_dir (created if missing); diagnostics go to `err`.
RunResult run(const RunConfig& config, const std::string& output_dir, std::ostream& out,
              std::ostream& err);

}  // namespace psds
