#include "psds/event.hpp"

#include <cmath>

#include "psds/rootfind.hpp"

namespace psds {

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::Impact: return "impact";
    case EventKind::SlidingEntry: return "sliding-entry";
    case EventKind::SlidingExit: return "sliding-exit";
    case EventKind::Crossing: return "crossing";
    case EventKind::ConstraintContact: return "constraint-contact";
  }
  return "unknown";
}

std::optional<double> find_scalar_event(const DenseSolution& seg,
                                        const std::function<double(double, Vec2)>& g,
                                        double x_tol, const EventScanOptions& scan) {
  bool armed = scan.arm_threshold <= 0.0;
  for (const DenseStep& step : seg.steps()) {
    if (step.t1() <= scan.t_from) continue;
    const double lo = std::max(step.t0, scan.t_from);
    const double hi = step.t1();
    if (hi <= lo) continue;
    const int n = std::max(1, scan.subdivisions);
    double t_prev = lo;
    double g_prev = g(t_prev, seg.eval(t_prev));
    if (!armed && g_prev <= -scan.arm_threshold) armed = true;
    for (int i = 1; i <= n; ++i) {
      const double t_cur = lo + (hi - lo) * (static_cast<double>(i) / n);
      const double g_cur = g(t_cur, seg.eval(t_cur));
      const bool sign_change = scan.rising_only ? (g_prev < 0.0 && g_cur >= 0.0)
                                                : (g_prev <= 0.0) != (g_cur <= 0.0);
      if (armed && sign_change) {
        const auto fn = [&](double t) { return g(t, seg.eval(t)); };
        const BrentResult r = brent(fn, t_prev, t_cur, x_tol);
        if (r.converged) return r.root;
        return t_cur;
      }
      if (!armed && g_cur <= -scan.arm_threshold) armed = true;
      t_prev = t_cur;
      g_prev = g_cur;
    }
  }
  return std::nullopt;
}

std::optional<Event> locate_event(const DenseSolution& seg, const SwitchingSurface& surface,
                                  double eps, const IntegratorOptions& opts, EventKind kind,
                                  const EventScanOptions& scan) {
  const auto g = [&surface, eps](double, Vec2 s) { return surface.h(s, eps); };
  const auto t = find_scalar_event(seg, g, opts.event_tolerance, scan);
  if (!t) return std::nullopt;
  Event ev;
  ev.time = *t;
  ev.state = snap_to_surface(surface, seg.eval(*t), eps);
  ev.kind = kind;
  return ev;
}

Vec2 snap_to_surface(const SwitchingSurface& surface, Vec2 s, double eps, double tol,
                     int max_iter) {
  for (int i = 0; i < max_iter; ++i) {
    const double value = surface.h(s, eps);
    if (std::fabs(value) <= tol) break;
    const Vec2 grad = surface.grad(s, eps);
    const double n2 = grad.norm_sq();
    if (n2 < 1e-24) break;
    s = s - grad * (value / n2);
  }
  return s;
}

}  // namespace psds
