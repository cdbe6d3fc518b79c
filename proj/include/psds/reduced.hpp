#pragma once

#include <vector>

#include "psds/integrate.hpp"
#include "psds/systems.hpp"

namespace psds {

/// The eps-rescaled linearization: linear flow under the Jacobian at the
/// origin, with reset u -> reset_u on the line v = line_level.
struct ReducedHybridSystem {
  Mat2 jacobian;
  double reset_u = 0.0;    // A'(0)
  double line_level = 0.0; // v* = -H_eps(0)/H_y(0)

  bool is_focus() const { return jacobian.eigen_discriminant() < 0.0; }
  /// True when J has the rotation form [[a, -b], [b, a]] with b != 0, so the
  /// flow is a closed-form logarithmic spiral.
  bool is_rotation_form(double tol = 1e-12) const {
    const double scale = std::max(1.0, jacobian.max_abs());
    return std::fabs(jacobian.a00 - jacobian.a11) <= tol * scale &&
           std::fabs(jacobian.a01 + jacobian.a10) <= tol * scale &&
           std::fabs(jacobian.a10) > tol * scale;
  }
};

struct ReducedSample {
  double t = 0.0;
  double u = 0.0;
  double v = 0.0;
};

struct ReducedCycle {
  double period = 0.0;     // T0
  double landing_u = 0.0;  // u0(T0)
  std::vector<ReducedSample> samples;
};

struct ReducedCycleOptions {
  /// Force the adaptive-integration path even for rotation-form Jacobians
  /// (used by equivalence tests).
  bool force_integration = false;
  IntegratorOptions integrator;
};

/// Builds the reduced system of a spec: J from the minus-field Jacobian at
/// the origin, reset level A'(0) (tangency formula, or the impact law for
/// impacting systems), line level -H_eps(0)/H_y(0).
ReducedHybridSystem build_reduced(const SystemSpec& spec);

/// Flows from (reset_u, line_level) into {v < line_level} until the first
/// return to the line with positive vertical velocity. Closed-form spiral
/// evaluation for rotation-form J, adaptive integration otherwise.
/// Throws NoReturn (horizon: 100 rotation periods) and WrongImpactCount
/// (grazing return, or an interior touch of the line).
ReducedCycle reduced_cycle(const ReducedHybridSystem& red,
                           const ReducedCycleOptions& opts = {});

}  // namespace psds
