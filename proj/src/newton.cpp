#include "psds/newton.hpp"

#include <cmath>

#include "psds/errors.hpp"

namespace psds {

namespace {

double norm_inf(Vec2 v) { return std::max(std::fabs(v.x), std::fabs(v.y)); }

}  // namespace

Vec2 newton2(const std::function<Vec2(Vec2)>& f, Vec2 x0, const NewtonOptions& opts) {
  Vec2 x = x0;
  Vec2 fx = f(x);
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    if (norm_inf(fx) <= opts.residual_tol) return x;
    const double d = opts.fd_step;
    const Vec2 fpx = f({x.x + d, x.y});
    const Vec2 fmx = f({x.x - d, x.y});
    const Vec2 fpy = f({x.x, x.y + d});
    const Vec2 fmy = f({x.x, x.y - d});
    const Mat2 jac{(fpx.x - fmx.x) / (2 * d), (fpy.x - fmy.x) / (2 * d),
                   (fpx.y - fmx.y) / (2 * d), (fpy.y - fmy.y) / (2 * d)};
    if (std::fabs(jac.det()) < opts.singular_tol) {
      throw SingularJacobian("newton2: |det J| below tolerance");
    }
    const Vec2 delta = solve2(jac, fx);
    double lambda = 1.0;
    Vec2 x_next = x - delta;
    Vec2 f_next = f(x_next);
    for (int half = 0; half < opts.max_halvings && norm_inf(f_next) > norm_inf(fx); ++half) {
      lambda *= 0.5;
      x_next = x - delta * lambda;
      f_next = f(x_next);
    }
    x = x_next;
    fx = f_next;
  }
  if (norm_inf(fx) <= opts.residual_tol) return x;
  throw NewtonDiverged("newton2: no convergence within iteration budget");
}

Vec3 newton3(const std::function<Vec3(Vec3)>& f, Vec3 x0, const NewtonOptions& opts) {
  Vec3 x = x0;
  Vec3 fx = f(x);
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    if (fx.norm_inf() <= opts.residual_tol) return x;
    const double d = opts.fd_step;
    Mat3 jac;
    const Vec3 offsets[3] = {{d, 0, 0}, {0, d, 0}, {0, 0, d}};
    for (int c = 0; c < 3; ++c) {
      const Vec3 fp = f(x + offsets[c]);
      const Vec3 fm = f(x - offsets[c]);
      jac(0, c) = (fp.a - fm.a) / (2 * d);
      jac(1, c) = (fp.b - fm.b) / (2 * d);
      jac(2, c) = (fp.c - fm.c) / (2 * d);
    }
    if (std::fabs(jac.det()) < opts.singular_tol) {
      throw SingularJacobian("newton3: |det J| below tolerance");
    }
    Vec3 delta;
    if (!solve3(jac, fx, delta, opts.singular_tol)) {
      throw SingularJacobian("newton3: pivot below tolerance");
    }
    double lambda = 1.0;
    Vec3 x_next = x - delta;
    Vec3 f_next = f(x_next);
    for (int half = 0; half < opts.max_halvings && f_next.norm_inf() > fx.norm_inf(); ++half) {
      lambda *= 0.5;
      x_next = x - delta * lambda;
      f_next = f(x_next);
    }
    x = x_next;
    fx = f_next;
  }
  if (fx.norm_inf() <= opts.residual_tol) return x;
  throw NewtonDiverged("newton3: no convergence within iteration budget");
}

}  // namespace psds
