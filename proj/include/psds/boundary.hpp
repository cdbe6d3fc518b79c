#pragma once

#include "psds/systems.hpp"

namespace psds {

/// Tangency point (A(eps), B(eps)): the minus field is tangent to the
/// switching surface there, and it bounds the sliding region.
struct TangencyPoint {
  double epsilon = 0.0;
  Vec2 point;
  Vec2 derivative_at_zero;  // (A'(0), B'(0))
};

/// Stationary point of the sliding flow together with its multiplier.
struct PseudoEquilibrium {
  double epsilon = 0.0;
  Vec2 point;         // (a(eps), b(eps))
  double multiplier = 0.0;  // lambda(eps)
  Vec3 derivative_at_zero;  // (a'(0), b'(0), lambda'(0))
};

enum class BoundaryKind { Sliding, Crossing, Tangent };

const char* to_string(BoundaryKind k);

struct BoundaryClassification {
  Vec2 point;
  BoundaryKind kind = BoundaryKind::Tangent;
  double indicator = 0.0;  // <grad h, F->, the sign-test value
};

/// Closed form (A'(0), B'(0)) = H_eps(0)/H_y(0) (g_y(0)/g_x(0), -1).
/// Throws DegenerateData when g_x(0) = 0 or H_y(0) = 0.
Vec2 tangency_derivative(const VectorField2& field_minus, const SwitchingSurface& surface);

/// Newton solve of (<grad h, F->, h) = (0, 0) seeded at eps * (A'(0), B'(0)).
TangencyPoint solve_tangency(const VectorField2& field_minus, const SwitchingSurface& surface,
                             double eps);

/// Splits L into sliding / crossing by the sign of <grad h, F->; points with
/// |indicator| <= 1e-12 classify as tangent. Throws NotOnSurface when
/// |h(s, eps)| > 1e-10.
BoundaryClassification classify_point(const VectorField2& field_minus,
                                      const SwitchingSurface& surface, Vec2 s, double eps);

/// Closed form (a'(0), b'(0), lambda'(0)) for the Filippov pseudo-equilibrium.
Vec3 filippov_pseudo_equilibrium_derivative(const FilippovSystem& sys);

/// Newton solve of (f- - lambda f+, g- - lambda g+, h) = 0 seeded at
/// eps * (a'(0), b'(0), lambda'(0)).
PseudoEquilibrium solve_filippov_pseudo_equilibrium(const FilippovSystem& sys, double eps);

/// Closed form derivative for the sweeping boundary equilibrium, Eq. pattern
/// H_eps/H_y (f_y/f_x, -1, det J / (H_y f_x)).
Vec3 sweeping_boundary_equilibrium_derivative(const SweepingProcess& proc);

/// Newton solve of (f + lambda H_x, g + lambda H_y, h) = 0.
PseudoEquilibrium solve_sweeping_boundary_equilibrium(const SweepingProcess& proc, double eps);

/// The outward-pointing product (f_x-, f_y-) . (A', B') * (A' - a') * lambda';
/// the escape condition holds iff the value is negative.
double check_outward_condition(const FilippovSystem& sys);
double check_outward_condition(const SweepingProcess& proc);

}  // namespace psds
