#include "psds/vector_field.hpp"

namespace psds {

Mat2 fd_jacobian(const std::function<Vec2(Vec2)>& f, Vec2 s, double step) {
  const Vec2 fx1 = f({s.x + step, s.y});
  const Vec2 fx0 = f({s.x - step, s.y});
  const Vec2 fy1 = f({s.x, s.y + step});
  const Vec2 fy0 = f({s.x, s.y - step});
  const double inv = 1.0 / (2.0 * step);
  return {(fx1.x - fx0.x) * inv, (fy1.x - fy0.x) * inv,
          (fx1.y - fx0.y) * inv, (fy1.y - fy0.y) * inv};
}

double eval_poly(const PolyCoeffs& c, Vec2 s) {
  const double x = s.x, y = s.y;
  return c[0] + c[1] * x + c[2] * y + c[3] * x * x + c[4] * x * y + c[5] * y * y +
         c[6] * x * x * x + c[7] * x * x * y + c[8] * x * y * y + c[9] * y * y * y;
}

Vec2 eval_poly_gradient(const PolyCoeffs& c, Vec2 s) {
  const double x = s.x, y = s.y;
  return {c[1] + 2.0 * c[3] * x + c[4] * y + 3.0 * c[6] * x * x + 2.0 * c[7] * x * y +
              c[8] * y * y,
          c[2] + c[4] * x + 2.0 * c[5] * y + c[7] * x * x + 2.0 * c[8] * x * y +
              3.0 * c[9] * y * y};
}

VectorField2 polynomial_field(const PolyCoeffs& fx, const PolyCoeffs& fy) {
  return VectorField2::with_jacobian(
      [fx, fy](Vec2 s) -> Vec2 { return {eval_poly(fx, s), eval_poly(fy, s)}; },
      [fx, fy](Vec2 s) -> Mat2 {
        const Vec2 gx = eval_poly_gradient(fx, s);
        const Vec2 gy = eval_poly_gradient(fy, s);
        return {gx.x, gx.y, gy.x, gy.y};
      });
}

VectorField2 focus_field(double a, double b, double quadratic) {
  return VectorField2::with_jacobian(
      [a, b, quadratic](Vec2 s) -> Vec2 {
        return {a * s.x - b * s.y + quadratic * s.x * s.x,
                b * s.x + a * s.y + quadratic * s.x * s.y};
      },
      [a, b, quadratic](Vec2 s) -> Mat2 {
        return {a + 2.0 * quadratic * s.x, -b,
                b + quadratic * s.y, a + quadratic * s.x};
      });
}

VectorField2 upper_drift_field(double m, double quadratic) {
  return VectorField2::with_jacobian(
      [m, quadratic](Vec2 s) -> Vec2 {
        return {m + quadratic * s.x * s.x, -1.0 + quadratic * s.x * s.y};
      },
      [quadratic](Vec2 s) -> Mat2 {
        return {2.0 * quadratic * s.x, 0.0, quadratic * s.y, quadratic * s.x};
      });
}

}  // namespace psds
