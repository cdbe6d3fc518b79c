#pragma once

#include <functional>

#include "psds/geometry.hpp"

namespace psds {

struct NewtonOptions {
  double residual_tol = 1e-12;   // infinity norm
  double singular_tol = 1e-14;   // |det J| floor
  int max_iterations = 50;
  int max_halvings = 10;         // backtracking on residual increase
  double fd_step = 1e-7;         // Jacobian finite-difference step
};

/// Damped Newton for F : R^2 -> R^2 with a finite-difference Jacobian.
/// Throws NewtonDiverged / SingularJacobian.
Vec2 newton2(const std::function<Vec2(Vec2)>& f, Vec2 x0, const NewtonOptions& opts = {});

/// Same for F : R^3 -> R^3.
Vec3 newton3(const std::function<Vec3(Vec3)>& f, Vec3 x0, const NewtonOptions& opts = {});

}  // namespace psds
