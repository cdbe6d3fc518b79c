#include "psds/validate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace psds {

std::vector<Vec2> probe_points(unsigned seed) {
  std::vector<Vec2> pts;
  const double grid[4] = {-0.75, -0.25, 0.25, 0.75};
  for (double gx : grid) {
    for (double gy : grid) pts.push_back({gx, gy});
  }
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int i = 0; i < 16; ++i) {
    const double x = unit(rng);
    const double y = unit(rng);
    pts.push_back({x, y});
  }
  pts.erase(std::remove_if(pts.begin(), pts.end(),
                           [](Vec2 p) { return p.norm() > 1.0; }),
            pts.end());
  return pts;
}

namespace {

double jacobian_mismatch(const VectorField2& field, const std::vector<Vec2>& probes) {
  double worst = 0.0;
  for (Vec2 p : probes) {
    const Mat2 supplied = field.jacobian(p);
    const Mat2 fd = fd_jacobian([&field](Vec2 s) { return field.eval(s); }, p);
    worst = std::max(worst, (supplied - fd).max_abs());
  }
  return worst;
}

double gradient_mismatch(const SwitchingSurface& surf, const std::vector<Vec2>& probes) {
  double worst = 0.0;
  for (Vec2 p : probes) {
    for (double eps : {0.0, 1e-2}) {
      const Vec2 supplied = surf.grad(p, eps);
      const double step = kFdStep;
      const Vec2 fd = {
          (surf.h({p.x + step, p.y}, eps) - surf.h({p.x - step, p.y}, eps)) / (2.0 * step),
          (surf.h({p.x, p.y + step}, eps) - surf.h({p.x, p.y - step}, eps)) / (2.0 * step)};
      worst = std::max(worst, (supplied - fd).norm());
      const double de = surf.d_eps(p, eps);
      const double de_fd = (surf.h(p, eps + step) - surf.h(p, eps - step)) / (2.0 * step);
      worst = std::max(worst, std::fabs(de - de_fd));
    }
  }
  return worst;
}

}  // namespace

ValidationReport validate_setup(const SystemSpec& spec, const ValidateOptions& opts) {
  ValidationReport report;
  const auto probes = probe_points(opts.probe_seed);
  const SwitchingSurface& surf = surface_of(spec);
  const VectorField2& fminus = minus_field(spec);

  auto add = [&report](std::string name, bool pass, double residual) {
    report.checks.push_back({std::move(name), pass, residual});
  };

  const double f0 = fminus.eval({0.0, 0.0}).norm();
  add("equilibrium_at_origin", f0 <= opts.residual_tol, f0);

  const double h0 = std::fabs(surf.h({0.0, 0.0}, 0.0));
  add("surface_through_origin", h0 <= opts.residual_tol, h0);

  const Vec2 g0 = surf.grad({0.0, 0.0}, 0.0);
  add("H_x_zero_at_origin", std::fabs(g0.x) <= opts.residual_tol, std::fabs(g0.x));
  add("H_y_nonzero_at_origin", std::fabs(g0.y) > opts.gradient_floor, std::fabs(g0.y));

  if (fminus.jacobian_mode() == DerivativeMode::ClosedForm) {
    const double mism = jacobian_mismatch(fminus, probes);
    add("jacobian_consistency", mism <= opts.derivative_tol, mism);
  }
  if (surf.gradient_mode() == DerivativeMode::ClosedForm) {
    const double mism = gradient_mismatch(surf, probes);
    add("gradient_consistency", mism <= opts.derivative_tol, mism);
  }

  if (const auto* imp = std::get_if<ImpactingSystem>(&spec)) {
    double worst = 0.0;
    for (double eps = opts.eps_max; eps >= 1e-4 * opts.eps_max; eps *= 0.1) {
      worst = std::max(worst, std::fabs(surf.h(imp->reset(eps), eps)));
    }
    add("reset_on_surface", worst <= opts.residual_tol, worst);
  } else if (const auto* fil = std::get_if<FilippovSystem>(&spec)) {
    bool ok = true;
    for (Vec2 p : probes) {
      if (!fil->field_plus.eval(p * 0.1).finite() || !fil->field_minus.eval(p * 0.1).finite()) {
        ok = false;
      }
    }
    add("fields_evaluable_near_surface", ok, ok ? 0.0 : 1.0);
    if (fil->field_plus.jacobian_mode() == DerivativeMode::ClosedForm) {
      const double mism = jacobian_mismatch(fil->field_plus, probes);
      add("plus_jacobian_consistency", mism <= opts.derivative_tol, mism);
    }
  } else if (std::get_if<SweepingProcess>(&spec)) {
    bool nonempty = true;
    for (double eps : {1e-2, 1e-3, 1e-4}) {
      bool found = false;
      for (Vec2 p : probes) {
        if (surf.h(p * (4.0 * eps), eps) < 0.0) {
          found = true;
          break;
        }
      }
      nonempty = nonempty && found;
    }
    add("constraint_interior_nonempty", nonempty, nonempty ? 0.0 : 1.0);
  }

  return report;
}

}  // namespace psds
