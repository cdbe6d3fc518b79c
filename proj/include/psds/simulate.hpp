#pragma once

#include "psds/builtins.hpp"
#include "psds/trajectory.hpp"

namespace psds {

struct SlidingVelocity {
  Vec2 velocity;
  double weight = 0.0;  // the Filippov convex weight alpha in [0, 1]
};

/// Filippov sliding velocity alpha F+ + (1 - alpha) F- with alpha chosen so
/// the result is orthogonal to grad h. Throws NotSliding when no admissible
/// alpha in [0, 1] exists.
SlidingVelocity filippov_sliding_field(const FilippovSystem& sys, Vec2 s, double eps);

/// Tangential projection <F, t>/|t|^2 t with t = (-H_y, H_x): the boundary
/// sliding velocity of the sweeping process. Throws ZeroGradient.
Vec2 sweeping_sliding_field(const SweepingProcess& proc, Vec2 s, double eps);

/// One catch-up step: Euclidean projection of s + h_step F(s) onto {H <= 0}.
/// Exact for affine constraints; KKT Newton otherwise (ProjectionDiverged
/// after 50 iterations).
Vec2 sweeping_step(const SweepingProcess& proc, Vec2 s, double h_step, double eps);

Trajectory simulate_impacting(const ImpactingSystem& sys, Vec2 s0, double eps, double t_max,
                              const IntegratorOptions& opts = {});

Trajectory simulate_filippov(const FilippovSystem& sys, Vec2 s0, double eps, double t_max,
                             const IntegratorOptions& opts = {});

Trajectory simulate_sweeping(const SweepingProcess& proc, Vec2 s0, double eps, double t_max,
                             const IntegratorOptions& opts = {});

/// Fixed-step catch-up discretization of the sweeping process; the low-order
/// oracle the hybrid scheme is cross-checked against.
std::vector<TrajectorySample> simulate_sweeping_catchup(const SweepingProcess& proc, Vec2 s0,
                                                        double eps, double t_max, double step);

}  // namespace psds
