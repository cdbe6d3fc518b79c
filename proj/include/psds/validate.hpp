#pragma once

#include <string>
#include <vector>

#include "psds/systems.hpp"

namespace psds {

struct CheckResult {
  std::string name;
  bool passed = false;
  double residual = 0.0;
};

/// Outcome of validate_setup: every standing hypothesis with its residual.
/// Analysis operations require all_passed() before their results mean anything.
struct ValidationReport {
  std::vector<CheckResult> checks;

  bool all_passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }
  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }
};

struct ValidateOptions {
  double residual_tol = 1e-10;      // equalities at the origin
  double derivative_tol = 1e-5;     // closed-form vs finite differences
  double gradient_floor = 1e-12;    // |H_y(0)| must exceed this
  double eps_max = 1e-1;            // reset-curve samples drawn from (0, eps_max]
  unsigned probe_seed = 0;
};

/// Probe set for derivative cross-checks: a 4x4 deterministic grid on
/// [-1,1]^2 plus 16 mt19937-seeded points, filtered to norm <= 1.
std::vector<Vec2> probe_points(unsigned seed = 0);

/// Checks the standing hypotheses: equilibrium of the minus field at the
/// origin, H(0,0,0) = 0, the rotated-frame conditions H_x(0) = 0 and
/// H_y(0) != 0, supplied-derivative consistency with finite differences, and
/// the per-class structural invariants (reset on surface, plus-field
/// evaluability, nonempty constraint interior). Pure and idempotent.
ValidationReport validate_setup(const SystemSpec& spec, const ValidateOptions& opts = {});

}  // namespace psds
