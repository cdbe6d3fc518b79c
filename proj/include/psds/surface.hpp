#pragma once

#include <functional>
#include <utility>

#include "psds/vector_field.hpp"

namespace psds {

/// Scalar switching function H(x, y, eps) with its spatial gradient and
/// eps-derivative. The zero level set is the switching manifold L; for
/// sweeping processes the constraint set is C(eps) = {H <= 0}.
class SwitchingSurface {
 public:
  using LevelFn = std::function<double(Vec2, double)>;
  using GradFn = std::function<Vec2(Vec2, double)>;
  using DEpsFn = std::function<double(Vec2, double)>;

  SwitchingSurface() = default;

  static SwitchingSurface with_gradient(LevelFn h, GradFn grad, DEpsFn d_eps,
                                        bool affine_in_xy = false) {
    SwitchingSurface s;
    s.h_ = std::move(h);
    s.grad_ = std::move(grad);
    s.d_eps_ = std::move(d_eps);
    s.mode_ = DerivativeMode::ClosedForm;
    s.affine_ = affine_in_xy;
    return s;
  }

  static SwitchingSurface finite_difference(LevelFn h, bool affine_in_xy = false) {
    SwitchingSurface s;
    s.h_ = std::move(h);
    s.mode_ = DerivativeMode::FiniteDifference;
    s.affine_ = affine_in_xy;
    return s;
  }

  double h(Vec2 s, double eps) const { return h_(s, eps); }

  Vec2 grad(Vec2 s, double eps) const {
    if (mode_ == DerivativeMode::ClosedForm) return grad_(s, eps);
    const double step = kFdStep;
    return {(h_({s.x + step, s.y}, eps) - h_({s.x - step, s.y}, eps)) / (2.0 * step),
            (h_({s.x, s.y + step}, eps) - h_({s.x, s.y - step}, eps)) / (2.0 * step)};
  }

  double d_eps(Vec2 s, double eps) const {
    if (mode_ == DerivativeMode::ClosedForm) return d_eps_(s, eps);
    const double step = kFdStep;
    return (h_(s, eps + step) - h_(s, eps - step)) / (2.0 * step);
  }

  DerivativeMode gradient_mode() const { return mode_; }

  /// True when H is affine in (x, y) for every eps, so Euclidean projection
  /// onto {H <= 0} is a single closed-form step.
  bool affine_in_xy() const { return affine_; }

  bool valid() const { return static_cast<bool>(h_); }

 private:
  LevelFn h_;
  GradFn grad_;
  DEpsFn d_eps_;
  DerivativeMode mode_ = DerivativeMode::FiniteDifference;
  bool affine_ = false;
};

/// H(x, y, eps) = P(x, y) + eps_coeff * eps with P polynomial of degree <= 3.
SwitchingSurface polynomial_surface(const PolyCoeffs& p, double eps_coeff);

/// The benchmark surface H = y - eps (gradient (0,1), H_eps = -1).
SwitchingSurface level_line_surface();

}  // namespace psds
