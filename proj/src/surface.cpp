#include "psds/surface.hpp"

namespace psds {

SwitchingSurface polynomial_surface(const PolyCoeffs& p, double eps_coeff) {
  const bool affine = p[3] == 0.0 && p[4] == 0.0 && p[5] == 0.0 && p[6] == 0.0 &&
                      p[7] == 0.0 && p[8] == 0.0 && p[9] == 0.0;
  return SwitchingSurface::with_gradient(
      [p, eps_coeff](Vec2 s, double eps) { return eval_poly(p, s) + eps_coeff * eps; },
      [p](Vec2 s, double) { return eval_poly_gradient(p, s); },
      [eps_coeff](Vec2, double) { return eps_coeff; }, affine);
}

SwitchingSurface level_line_surface() {
  PolyCoeffs p{};
  p[2] = 1.0;  // H = y - eps
  return polynomial_surface(p, -1.0);
}

}  // namespace psds
