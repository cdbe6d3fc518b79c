#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "psds/reduced.hpp"
#include "psds/trajectory.hpp"

namespace psds {

enum class Verdict { CyclePredicted, NotPredicted, Inconclusive };

const char* to_string(Verdict v);

struct HypothesisCheck {
  std::string name;
  bool passed = false;
  /// Within the strictness margin of an open condition: the verdict becomes
  /// inconclusive rather than a hard pass/fail.
  bool borderline = false;
  double value = 0.0;
};

/// One confirmed loop of the full nonlinear system.
struct ConfirmationRecord {
  double epsilon = 0.0;
  double period = 0.0;       // flight + sliding
  double flight_time = 0.0;  // T_eps, the surface-return time
  double closure_error = 0.0;
  Vec2 landing;
  Trajectory trajectory;
};

struct BifurcationReport {
  SystemClass system_class = SystemClass::Impacting;
  ReducedHybridSystem reduced;
  std::optional<Vec2> tangency_slope;     // (A'(0), B'(0))
  std::optional<Vec3> equilibrium_slope;  // (a'(0), b'(0), lambda'(0))
  std::vector<HypothesisCheck> checks;
  std::optional<ReducedCycle> cycle;
  std::map<std::string, double> diagnostics;
  Verdict verdict = Verdict::Inconclusive;
  std::optional<ConfirmationRecord> confirmation;

  const HypothesisCheck* find(const std::string& name) const {
    for (const auto& c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }
};

/// `key = value` lines, stable ordering; the human-readable report format.
std::string render_report(const BifurcationReport& report);

/// Machine-readable mirror (JSON) consumed by the region-grid tooling.
std::string render_report_json(const BifurcationReport& report);

}  // namespace psds
