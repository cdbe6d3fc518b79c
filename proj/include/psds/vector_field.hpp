#pragma once

#include <array>
#include <functional>
#include <utility>

#include "psds/geometry.hpp"

namespace psds {

enum class DerivativeMode { ClosedForm, FiniteDifference };

/// Default step for every finite-difference derivative in the library
/// (central differences).
inline constexpr double kFdStep = 1e-6;

/// Central finite-difference Jacobian of an R^2 -> R^2 map.
Mat2 fd_jacobian(const std::function<Vec2(Vec2)>& f, Vec2 s, double step = kFdStep);

/// Smooth planar vector field (f, g) with Jacobian access.
///
/// Immutable after construction; safe to share across threads as long as the
/// wrapped callables are pure.
class VectorField2 {
 public:
  using EvalFn = std::function<Vec2(Vec2)>;
  using JacobianFn = std::function<Mat2(Vec2)>;

  VectorField2() = default;

  static VectorField2 with_jacobian(EvalFn eval, JacobianFn jac) {
    VectorField2 v;
    v.eval_ = std::move(eval);
    v.jac_ = std::move(jac);
    v.mode_ = DerivativeMode::ClosedForm;
    return v;
  }

  static VectorField2 finite_difference(EvalFn eval) {
    VectorField2 v;
    v.eval_ = std::move(eval);
    v.mode_ = DerivativeMode::FiniteDifference;
    return v;
  }

  Vec2 operator()(Vec2 s) const { return eval_(s); }
  Vec2 eval(Vec2 s) const { return eval_(s); }

  Mat2 jacobian(Vec2 s) const {
    if (mode_ == DerivativeMode::ClosedForm) return jac_(s);
    return fd_jacobian(eval_, s);
  }

  DerivativeMode jacobian_mode() const { return mode_; }
  bool valid() const { return static_cast<bool>(eval_); }

 private:
  EvalFn eval_;
  JacobianFn jac_;
  DerivativeMode mode_ = DerivativeMode::FiniteDifference;
};

/// Coefficients of a bivariate polynomial of total degree <= 3, ordered
/// 1, x, y, x^2, xy, y^2, x^3, x^2 y, x y^2, y^3.
using PolyCoeffs = std::array<double, 10>;

double eval_poly(const PolyCoeffs& c, Vec2 s);
Vec2 eval_poly_gradient(const PolyCoeffs& c, Vec2 s);

/// Polynomial vector field (each component of degree <= 3) with the
/// closed-form Jacobian. This is the coefficient-table path used by the CLI.
VectorField2 polynomial_field(const PolyCoeffs& fx, const PolyCoeffs& fy);

/// The focus normal-form field (a x - b y, b x + a y) plus an optional
/// quadratic remainder c (x^2, x y) which vanishes to first order at 0.
VectorField2 focus_field(double a, double b, double quadratic = 0.0);

/// Constant field (m, -1) plus an optional quadratic remainder c (x^2, x y).
VectorField2 upper_drift_field(double m, double quadratic = 0.0);

}  // namespace psds
