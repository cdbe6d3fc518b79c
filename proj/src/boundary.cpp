#include "psds/boundary.hpp"

#include <cmath>

#include "psds/errors.hpp"
#include "psds/newton.hpp"

namespace psds {

namespace {

constexpr double kIndicatorTol = 1e-12;
constexpr double kOnSurfaceTol = 1e-10;

}  // namespace

const char* to_string(BoundaryKind k) {
  switch (k) {
    case BoundaryKind::Sliding: return "sliding";
    case BoundaryKind::Crossing: return "crossing";
    case BoundaryKind::Tangent: return "tangent";
  }
  return "unknown";
}

Vec2 tangency_derivative(const VectorField2& field_minus, const SwitchingSurface& surface) {
  const Mat2 jac = field_minus.jacobian({0.0, 0.0});
  const Vec2 grad = surface.grad({0.0, 0.0}, 0.0);
  const double h_eps = surface.d_eps({0.0, 0.0}, 0.0);
  if (std::fabs(jac.a10) < 1e-14) {
    throw DegenerateData("tangency derivative needs g_x(0) != 0");
  }
  if (std::fabs(grad.y) < 1e-14) {
    throw DegenerateData("tangency derivative needs H_y(0) != 0");
  }
  const double factor = h_eps / grad.y;
  return {factor * (jac.a11 / jac.a10), -factor};
}

TangencyPoint solve_tangency(const VectorField2& field_minus, const SwitchingSurface& surface,
                             double eps) {
  const Vec2 slope = tangency_derivative(field_minus, surface);
  auto residual = [&](Vec2 p) -> Vec2 {
    return {dot(surface.grad(p, eps), field_minus.eval(p)), surface.h(p, eps)};
  };
  NewtonOptions opts;
  const Vec2 point = newton2(residual, slope * eps, opts);
  return {eps, point, slope};
}

BoundaryClassification classify_point(const VectorField2& field_minus,
                                      const SwitchingSurface& surface, Vec2 s, double eps) {
  if (std::fabs(surface.h(s, eps)) > kOnSurfaceTol) {
    throw NotOnSurface("classify_point expects a state on the switching surface");
  }
  const double indicator = dot(surface.grad(s, eps), field_minus.eval(s));
  BoundaryKind kind = BoundaryKind::Tangent;
  if (indicator > kIndicatorTol) {
    kind = BoundaryKind::Sliding;
  } else if (indicator < -kIndicatorTol) {
    kind = BoundaryKind::Crossing;
  }
  return {s, kind, indicator};
}

Vec3 filippov_pseudo_equilibrium_derivative(const FilippovSystem& sys) {
  const Mat2 jm = sys.field_minus.jacobian({0.0, 0.0});
  const Vec2 fp = sys.field_plus.eval({0.0, 0.0});
  const Vec2 grad = sys.surface.grad({0.0, 0.0}, 0.0);
  const double h_eps = sys.surface.d_eps({0.0, 0.0}, 0.0);
  if (std::fabs(grad.y) < 1e-14) {
    throw DegenerateData("pseudo-equilibrium derivative needs H_y(0) != 0");
  }
  const double denom = jm.a00 * fp.y - jm.a10 * fp.x;  // f_x g+ - g_x f+
  if (std::fabs(denom) < 1e-14) {
    throw DegenerateData("pseudo-equilibrium derivative: (f_x-, g_x-) parallel to F+(0)");
  }
  const double factor = h_eps / grad.y;
  return {factor * (jm.a01 * fp.y - jm.a11 * fp.x) / denom, -factor,
          -factor * jm.det() / denom};
}

PseudoEquilibrium solve_filippov_pseudo_equilibrium(const FilippovSystem& sys, double eps) {
  Vec3 slope;
  try {
    slope = filippov_pseudo_equilibrium_derivative(sys);
  } catch (const DegenerateData& err) {
    // The zero denominator is exactly the singular determinant of the
    // equilibrium system's Jacobian.
    throw SingularJacobian(err.what());
  }
  auto residual = [&](Vec3 v) -> Vec3 {
    const Vec2 p{v.a, v.b};
    const Vec2 fm = sys.field_minus.eval(p);
    const Vec2 fp = sys.field_plus.eval(p);
    return {fm.x - v.c * fp.x, fm.y - v.c * fp.y, sys.surface.h(p, eps)};
  };
  NewtonOptions opts;
  const Vec3 sol = newton3(residual, slope * eps, opts);
  return {eps, {sol.a, sol.b}, sol.c, slope};
}

Vec3 sweeping_boundary_equilibrium_derivative(const SweepingProcess& proc) {
  const Mat2 jac = proc.field.jacobian({0.0, 0.0});
  const Vec2 grad = proc.surface.grad({0.0, 0.0}, 0.0);
  const double h_eps = proc.surface.d_eps({0.0, 0.0}, 0.0);
  if (std::fabs(jac.a00) < 1e-14) {
    throw DegenerateData("sweeping equilibrium derivative needs f_x(0) != 0");
  }
  if (std::fabs(grad.y) < 1e-14) {
    throw DegenerateData("sweeping equilibrium derivative needs H_y(0) != 0");
  }
  const double factor = h_eps / grad.y;
  return {factor * jac.a01 / jac.a00, -factor, factor * jac.det() / (grad.y * jac.a00)};
}

PseudoEquilibrium solve_sweeping_boundary_equilibrium(const SweepingProcess& proc, double eps) {
  const Vec3 slope = sweeping_boundary_equilibrium_derivative(proc);
  auto residual = [&](Vec3 v) -> Vec3 {
    const Vec2 p{v.a, v.b};
    const Vec2 f = proc.field.eval(p);
    const Vec2 grad = proc.surface.grad(p, eps);
    return {f.x + v.c * grad.x, f.y + v.c * grad.y, proc.surface.h(p, eps)};
  };
  NewtonOptions opts;
  const Vec3 sol = newton3(residual, slope * eps, opts);
  return {eps, {sol.a, sol.b}, sol.c, slope};
}

namespace {

double outward_product(const Mat2& jac_minus, Vec2 tangency_slope, const Vec3& eq_slope) {
  const Vec2 f_row{jac_minus.a00, jac_minus.a01};
  return dot(f_row, tangency_slope) * (tangency_slope.x - eq_slope.a) * eq_slope.c;
}

}  // namespace

double check_outward_condition(const FilippovSystem& sys) {
  return outward_product(sys.field_minus.jacobian({0.0, 0.0}),
                         tangency_derivative(sys.field_minus, sys.surface),
                         filippov_pseudo_equilibrium_derivative(sys));
}

double check_outward_condition(const SweepingProcess& proc) {
  return outward_product(proc.field.jacobian({0.0, 0.0}),
                         tangency_derivative(proc.field, proc.surface),
                         sweeping_boundary_equilibrium_derivative(proc));
}

}  // namespace psds
