#include "psds/reduced.hpp"

#include <cmath>

#include "psds/boundary.hpp"
#include "psds/errors.hpp"
#include "psds/event.hpp"
#include "psds/rootfind.hpp"

namespace psds {

namespace {

constexpr int kHorizonPeriods = 100;
constexpr double kGuard = 1e-6;  // strict-interior guard for the one-impact check

double rotation_rate(const Mat2& jac) {
  const double disc = jac.eigen_discriminant();
  if (disc < 0.0) return 0.5 * std::sqrt(-disc);  // |Im eigenvalue|
  return std::max(jac.max_abs(), 1e-6);
}

ReducedCycle closed_form_cycle(const ReducedHybridSystem& red) {
  const double a = red.jacobian.a00;
  const double b = red.jacobian.a10;
  const Vec2 z0{red.reset_u, red.line_level};
  const double r0 = z0.norm();
  const double theta0 = std::atan2(z0.y, z0.x);
  const double scale = std::max(1.0, std::max(r0, std::fabs(red.line_level)));

  auto v_of = [&](double t) { return r0 * std::exp(a * t) * std::sin(theta0 + b * t); };
  auto u_of = [&](double t) { return r0 * std::exp(a * t) * std::cos(theta0 + b * t); };
  auto g = [&](double t) { return v_of(t) - red.line_level; };
  auto vdot_of = [&](double t) { return b * u_of(t) + a * v_of(t); };

  if (vdot_of(0.0) > 1e-10 * scale) {
    throw NoReturn("reduced flow departs out of the domain {v < line level}");
  }

  const double period = 2.0 * M_PI / std::fabs(b);
  const double horizon = kHorizonPeriods * period;
  const double dt = period / 256.0;
  const double arm = 1e-12 * scale;

  bool armed = false;
  double t_prev = 0.0;
  double g_prev = 0.0;
  for (double t = dt; t <= horizon + dt; t += dt) {
    const double g_cur = g(t);
    if (armed && g_prev < 0.0 && g_cur >= 0.0) {
      const BrentResult root = brent(g, t_prev, t, 1e-14);
      const double t_star = root.converged ? root.root : t;
      if (std::fabs(vdot_of(t_star)) <= 1e-10 * scale) {
        throw WrongImpactCount("grazing return to the impact line");
      }
      ReducedCycle cycle;
      cycle.period = t_star;
      cycle.landing_u = u_of(t_star);
      const int n = 1024;
      cycle.samples.reserve(n + 1);
      for (int i = 0; i <= n; ++i) {
        const double ts = t_star * i / n;
        cycle.samples.push_back({ts, u_of(ts), v_of(ts)});
      }
      return cycle;
    }
    if (!armed && g_cur <= -arm) armed = true;
    t_prev = t;
    g_prev = g_cur;
  }
  throw NoReturn("no return to the impact line within 100 rotation periods");
}

ReducedCycle integrated_cycle(const ReducedHybridSystem& red, const ReducedCycleOptions& opts) {
  const Mat2 jac = red.jacobian;
  const Vec2 start{red.reset_u, red.line_level};
  const double scale = std::max(1.0, start.norm());
  const double vdot0 = jac.a10 * start.x + jac.a11 * start.y;
  if (vdot0 > 1e-10 * scale) {
    throw NoReturn("reduced flow departs out of the domain {v < line level}");
  }

  const Rhs rhs = [jac](Vec2 y) { return jac * y; };
  const double chunk = 2.0 * M_PI / rotation_rate(jac);
  const double arm = 1e-10 * scale;

  IntegratorOptions integ = opts.integrator;
  integ.max_step = integ.max_step > 0.0 ? integ.max_step : chunk / 64.0;

  DenseSolution full;
  full.set_begin(0.0, start);
  const auto g = [&red](double, Vec2 s) { return s.y - red.line_level; };

  double t = 0.0;
  Vec2 y = start;
  bool armed = false;
  for (int period = 0; period < kHorizonPeriods; ++period) {
    DenseSolution sol = integrate_smooth(rhs, y, {t, t + chunk}, integ);
    EventScanOptions scan;
    scan.rising_only = true;
    scan.arm_threshold = armed ? 0.0 : arm;
    const auto te = find_scalar_event(sol, g, 1e-14, scan);
    for (const DenseStep& st : sol.steps()) {
      full.push(st);
      if (!armed && st.y1.y - red.line_level <= -arm) armed = true;
    }
    if (te) {
      const Vec2 land = sol.eval(*te);
      const double vdot = jac.a10 * land.x + jac.a11 * land.y;
      if (std::fabs(vdot) <= 1e-10 * scale) {
        throw WrongImpactCount("grazing return to the impact line");
      }
      full.truncate(*te, land);
      ReducedCycle cycle;
      cycle.period = *te;
      cycle.landing_u = land.x;
      const int n = 1024;
      cycle.samples.reserve(n + 1);
      for (int i = 0; i <= n; ++i) {
        const double ts = *te * i / n;
        const Vec2 s = i == 0 ? start : (i == n ? land : full.eval(ts));
        cycle.samples.push_back({ts, s.x, s.y});
      }
      return cycle;
    }
    t = sol.t_end();
    y = sol.end_state();
  }
  throw NoReturn("no return to the impact line within 100 rotation periods");
}

}  // namespace

ReducedHybridSystem build_reduced(const SystemSpec& spec) {
  ReducedHybridSystem red;
  const VectorField2& field = minus_field(spec);
  const SwitchingSurface& surf = surface_of(spec);
  red.jacobian = field.jacobian({0.0, 0.0});
  const Vec2 grad = surf.grad({0.0, 0.0}, 0.0);
  const double h_eps = surf.d_eps({0.0, 0.0}, 0.0);
  if (std::fabs(grad.y) < 1e-14) {
    throw DegenerateData("build_reduced needs H_y(0) != 0");
  }
  red.line_level = -h_eps / grad.y;
  if (const auto* imp = std::get_if<ImpactingSystem>(&spec)) {
    red.reset_u = reset_derivative_at_zero(*imp).x;
  } else {
    red.reset_u = tangency_derivative(field, surf).x;
  }
  return red;
}

ReducedCycle reduced_cycle(const ReducedHybridSystem& red, const ReducedCycleOptions& opts) {
  ReducedCycle cycle = (!opts.force_integration && red.is_rotation_form())
                           ? closed_form_cycle(red)
                           : integrated_cycle(red, opts);
  // "Exactly one impact per period": the interior of the cycle must stay
  // strictly below the line.
  for (const ReducedSample& s : cycle.samples) {
    if (s.t > kGuard && s.t < cycle.period - kGuard && s.v >= red.line_level) {
      throw WrongImpactCount("interior touch of the impact line");
    }
  }
  return cycle;
}

}  // namespace psds
