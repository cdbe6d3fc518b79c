#include "psds/rotate.hpp"

#include <cmath>

#include "psds/errors.hpp"

namespace psds {

namespace {

VectorField2 rotate_field(const VectorField2& field, const Mat2& r) {
  const Mat2 rt = r.transpose();
  auto eval = [field, r, rt](Vec2 s) { return r * field.eval(rt * s); };
  if (field.jacobian_mode() == DerivativeMode::ClosedForm) {
    auto jac = [field, r, rt](Vec2 s) { return r * field.jacobian(rt * s) * rt; };
    return VectorField2::with_jacobian(eval, jac);
  }
  return VectorField2::finite_difference(eval);
}

SwitchingSurface rotate_surface(const SwitchingSurface& surf, const Mat2& r) {
  const Mat2 rt = r.transpose();
  auto h = [surf, rt](Vec2 s, double eps) { return surf.h(rt * s, eps); };
  if (surf.gradient_mode() == DerivativeMode::ClosedForm) {
    auto grad = [surf, r, rt](Vec2 s, double eps) { return r * surf.grad(rt * s, eps); };
    auto d_eps = [surf, rt](Vec2 s, double eps) { return surf.d_eps(rt * s, eps); };
    return SwitchingSurface::with_gradient(h, grad, d_eps, surf.affine_in_xy());
  }
  return SwitchingSurface::finite_difference(h, surf.affine_in_xy());
}

}  // namespace

SystemSpec rotate_to_normal_form(const SystemSpec& spec) {
  const SwitchingSurface& surf = surface_of(spec);
  const Vec2 g = surf.grad({0.0, 0.0}, 0.0);
  const double norm = g.norm();
  if (norm < 1e-12) {
    throw ZeroGradient("surface gradient vanishes at the origin; rotation undefined");
  }
  if (g.x == 0.0 && g.y > 0.0) return spec;  // already in the normal frame

  // R sends the unit gradient to (0, 1): a rotation by pi/2 - atan2(g_y, g_x).
  const double theta = std::atan2(g.y, g.x);
  const Mat2 r = Mat2::rotation(M_PI / 2.0 - theta);

  return std::visit(
      [&r](const auto& sys) -> SystemSpec {
        using T = std::decay_t<decltype(sys)>;
        if constexpr (std::is_same_v<T, ImpactingSystem>) {
          ImpactingSystem out;
          out.field = rotate_field(sys.field, r);
          out.surface = rotate_surface(sys.surface, r);
          auto reset = sys.reset;
          out.reset = [reset, r](double eps) { return r * reset(eps); };
          // A user-supplied A'(0) lives in the old frame; the rotated system
          // recovers its reset derivative by finite differences instead.
          out.reset_u_derivative = std::nullopt;
          return out;
        } else if constexpr (std::is_same_v<T, FilippovSystem>) {
          FilippovSystem out;
          out.field_minus = rotate_field(sys.field_minus, r);
          out.field_plus = rotate_field(sys.field_plus, r);
          out.surface = rotate_surface(sys.surface, r);
          return out;
        } else {
          SweepingProcess out;
          out.field = rotate_field(sys.field, r);
          out.surface = rotate_surface(sys.surface, r);
          return out;
        }
      },
      spec);
}

}  // namespace psds
