#pragma once

#include <utility>
#include <vector>

#include "psds/boundary.hpp"
#include "psds/report.hpp"
#include "psds/simulate.hpp"
#include "psds/validate.hpp"

namespace psds {

/// First return of the full nonlinear minus-side flow to the surface,
/// starting from the distinguished point (the reset point for impacting
/// systems, the tangency point otherwise). Throws NoReturn.
std::pair<double, Vec2> return_time_map(const SystemSpec& spec, double eps,
                                        const IntegratorOptions& opts = {});

/// Transversal-approach indicator <grad h(landing, eps), F-(landing)>.
double transversality(const SystemSpec& spec, double eps, Vec2 landing);

BifurcationReport check_impacting(const ImpactingSystem& sys);
BifurcationReport check_filippov(const FilippovSystem& sys);
BifurcationReport check_sweeping(const SweepingProcess& proc);
BifurcationReport check_system(const SystemSpec& spec);

/// Simulates one full predicted loop from the distinguished point: free
/// flight, landing assertions (sliding-segment membership for Filippov and
/// sweeping systems), sliding back / reset, closure. The caller is expected
/// to hold a cycle-predicted verdict (or to knowingly override it).
/// Throws ConfirmationFailed with the violated assertion, or NoReturn.
ConfirmationRecord confirm_cycle(const SystemSpec& spec, double eps,
                                 const IntegratorOptions& opts = {});

struct ConvergenceRow {
  double epsilon = 0.0;
  double amplitude = 0.0;   // max state norm over the confirmed cycle
  double period = 0.0;      // full loop period
  double period_gap = 0.0;  // T_eps - T0
};

/// Confirms the cycle at each epsilon (nonpositive entries are skipped) and
/// tabulates amplitude and period convergence toward the reduced cycle.
std::vector<ConvergenceRow> convergence_study(const SystemSpec& spec,
                                              const std::vector<double>& eps_list,
                                              const IntegratorOptions& opts = {});

}  // namespace psds
