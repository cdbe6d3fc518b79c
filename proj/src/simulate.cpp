#include "psds/simulate.hpp"

#include <cmath>
#include <utility>

#include "psds/newton.hpp"
#include "psds/rootfind.hpp"

namespace psds {

namespace {

constexpr double kEventGuard = 1e-9;   // re-arming delay after an event
constexpr double kHysteresis = 1e-12;  // sweeping boundary-release band
constexpr double kTangentTol = 1e-10;  // |<grad h, F>| below this is "tangent"

double arm_level(const IntegratorOptions& opts) {
  return std::max(10.0 * opts.event_tolerance, 1e-10);
}

/// Appends samples to a segment, honoring the uniform sample_dt grid when set.
class Recorder {
 public:
  Recorder(double sample_dt, std::vector<TrajectorySample>& out)
      : dt_(sample_dt), out_(out) {}

  void begin(double t, Vec2 y) {
    out_.push_back({t, y});
    if (dt_ > 0.0) next_ = t + dt_;
  }

  /// Records the interior of an accepted step up to t_stop (exclusive).
  void interior(const DenseStep& step, double t_stop) {
    if (dt_ <= 0.0) return;
    while (next_ < t_stop && next_ <= step.t0 + step.h) {
      out_.push_back({next_, step.eval(next_)});
      next_ += dt_;
    }
  }

  void step_end(const DenseStep& step) {
    interior(step, step.t1());
    if (dt_ <= 0.0) out_.push_back({step.t1(), step.y1});
  }

  void end(double t, Vec2 y) {
    if (!out_.empty() && out_.back().t >= t) return;
    out_.push_back({t, y});
  }

 private:
  double dt_;
  double next_ = 0.0;
  std::vector<TrajectorySample>& out_;
};

struct PhaseResult {
  double t = 0.0;
  Vec2 y;
  int event_index = -1;  // which scalar event fired; -1 = reached the time limit
};

/// Integrates `rhs` until the earliest root of any scalar event function or
/// until t_limit. Event i may be restricted to rising crossings and gated by
/// an arming threshold (the function must first dip below -arm).
struct ScalarEvent {
  std::function<double(Vec2)> g;
  bool rising_only = false;
  double arm = 0.0;
  bool armed = true;
};

PhaseResult run_phase(const Rhs& rhs, std::vector<ScalarEvent> events, double t0, Vec2 y0,
                      double t_limit, const IntegratorOptions& opts,
                      std::vector<TrajectorySample>& samples) {
  Recorder rec(opts.sample_dt, samples);
  rec.begin(t0, y0);
  for (auto& ev : events) {
    if (ev.arm > 0.0) ev.armed = ev.g(y0) <= -ev.arm;
  }
  Rk45Stepper stepper(rhs, t0, y0, t_limit, opts);
  std::vector<double> g_prev(events.size());
  while (!stepper.done()) {
    const DenseStep step = stepper.step();
    const int n = 8;
    for (std::size_t i = 0; i < events.size(); ++i) g_prev[i] = events[i].g(step.y0);
    double t_prev = step.t0;
    for (int k = 1; k <= n; ++k) {
      const double theta = static_cast<double>(k) / n;
      const double t_cur = k == n ? step.t1() : step.t0 + step.h * theta;
      const Vec2 y_cur = k == n ? step.y1 : step.eval_theta(theta);
      int best = -1;
      double best_t = 0.0;
      for (std::size_t i = 0; i < events.size(); ++i) {
        ScalarEvent& ev = events[i];
        const double g_cur = ev.g(y_cur);
        const bool change = ev.rising_only ? (g_prev[i] < 0.0 && g_cur >= 0.0)
                                           : (g_prev[i] <= 0.0) != (g_cur <= 0.0);
        if (ev.armed && change) {
          const auto fn = [&](double t) { return ev.g(step.eval(t)); };
          const BrentResult root = brent(fn, t_prev, t_cur, opts.event_tolerance);
          const double te = root.converged ? root.root : t_cur;
          if (best < 0 || te < best_t) {
            best = static_cast<int>(i);
            best_t = te;
          }
        }
        if (!ev.armed && g_cur <= -ev.arm) ev.armed = true;
        g_prev[i] = g_cur;
      }
      if (best >= 0) {
        const Vec2 ye = step.eval(best_t);
        rec.interior(step, best_t);
        rec.end(best_t, ye);
        return {best_t, ye, best};
      }
      t_prev = t_cur;
    }
    rec.step_end(step);
  }
  rec.end(stepper.t(), stepper.y());
  return {stepper.t(), stepper.y(), -1};
}

/// Second derivative of t -> h(flow(t), eps) along the field, by central
/// differences of <grad h, F> along the flow direction. Decides which side a
/// tangential contact curves into.
double h_second_derivative(const SwitchingSurface& surf, const VectorField2& field, Vec2 s,
                           double eps) {
  const Vec2 f = field.eval(s);
  const double scale = std::max(1.0, s.norm());
  const double d = 1e-6 * scale / std::max(1.0, f.norm());
  const Vec2 sp = s + f * d;
  const Vec2 sm = s - f * d;
  const double hp = dot(surf.grad(sp, eps), field.eval(sp));
  const double hm = dot(surf.grad(sm, eps), field.eval(sm));
  return (hp - hm) / (2.0 * d);
}

void check_chatter(double t_now, double& t_last_event) {
  if (t_now - t_last_event <= kEventGuard) {
    throw ChatterDetected("two surface events within 1e-9 time units");
  }
  t_last_event = t_now;
}

Vec2 project_onto_constraint(const SwitchingSurface& surf, Vec2 trial, double eps) {
  const double value = surf.h(trial, eps);
  if (value <= 0.0) return trial;
  if (surf.affine_in_xy()) {
    const Vec2 g = surf.grad(trial, eps);
    return trial - g * (value / g.norm_sq());
  }
  const Vec2 g0 = surf.grad(trial, eps);
  const double mu0 = value / g0.norm_sq();
  auto kkt = [&surf, trial, eps](Vec3 v) -> Vec3 {
    const Vec2 p{v.a, v.b};
    const Vec2 grad = surf.grad(p, eps);
    return {p.x + v.c * grad.x - trial.x, p.y + v.c * grad.y - trial.y, surf.h(p, eps)};
  };
  NewtonOptions opts;
  opts.residual_tol = 1e-13;
  try {
    const Vec3 sol = newton3(kkt, {trial.x - g0.x * mu0, trial.y - g0.y * mu0, mu0}, opts);
    return {sol.a, sol.b};
  } catch (const NewtonDiverged&) {
    throw ProjectionDiverged("constraint projection Newton exceeded its budget");
  } catch (const SingularJacobian&) {
    throw ProjectionDiverged("constraint projection Newton hit a singular system");
  }
}

}  // namespace

SlidingVelocity filippov_sliding_field(const FilippovSystem& sys, Vec2 s, double eps) {
  const Vec2 grad = sys.surface.grad(s, eps);
  const Vec2 fm = sys.field_minus.eval(s);
  const Vec2 fp = sys.field_plus.eval(s);
  const double gm = dot(grad, fm);
  const double gp = dot(grad, fp);
  const double denom = gm - gp;
  if (std::fabs(denom) < 1e-14) {
    throw NotSliding("normal components coincide; no sliding combination");
  }
  double alpha = gm / denom;
  if (alpha < -1e-12 || alpha > 1.0 + 1e-12) {
    throw NotSliding("no convex weight makes the combined field tangent");
  }
  alpha = std::min(1.0, std::max(0.0, alpha));
  return {fp * alpha + fm * (1.0 - alpha), alpha};
}

Vec2 sweeping_sliding_field(const SweepingProcess& proc, Vec2 s, double eps) {
  const Vec2 grad = proc.surface.grad(s, eps);
  if (grad.norm() < 1e-12) {
    throw ZeroGradient("surface gradient vanishes on the constraint boundary");
  }
  const Vec2 tangent{-grad.y, grad.x};
  const Vec2 f = proc.field.eval(s);
  return tangent * (dot(f, tangent) / tangent.norm_sq());
}

Vec2 sweeping_step(const SweepingProcess& proc, Vec2 s, double h_step, double eps) {
  const Vec2 trial = s + proc.field.eval(s) * h_step;
  return project_onto_constraint(proc.surface, trial, eps);
}

Trajectory simulate_impacting(const ImpactingSystem& sys, Vec2 s0, double eps, double t_max,
                              const IntegratorOptions& opts) {
  if (sys.surface.h(s0, eps) > 10.0 * opts.event_tolerance) {
    throw DomainError("simulate_impacting requires h(s0) <= 0");
  }
  Trajectory traj;
  const Rhs rhs = [&sys](Vec2 y) { return sys.field.eval(y); };
  double t = 0.0;
  Vec2 state = s0;
  double t_last_impact = -1.0;
  int impacts = 0;

  while (t < t_max && impacts < opts.max_events) {
    // A start on the surface with outward flow re-impacts instantly.
    if (std::fabs(sys.surface.h(state, eps)) <= arm_level(opts) &&
        dot(sys.surface.grad(state, eps), sys.field.eval(state)) > kTangentTol) {
      const Vec2 hit = snap_to_surface(sys.surface, state, eps);
      traj.segments.push_back({SegmentMode::FreeMinus, {{t, hit}}});
      traj.events.push_back({t, hit, EventKind::Impact});
      if (impacts > 0) check_chatter(t, t_last_impact);
      t_last_impact = t;
      ++impacts;
      state = sys.reset(eps);
      t += kEventGuard;
      continue;
    }

    TrajectorySegment seg{SegmentMode::FreeMinus, {}};
    ScalarEvent surface_hit{[&sys, eps](Vec2 y) { return sys.surface.h(y, eps); },
                            /*rising_only=*/true, arm_level(opts), false};
    const PhaseResult res = run_phase(rhs, {surface_hit}, t, state, t_max, opts, seg.samples);
    if (res.event_index < 0) {
      traj.segments.push_back(std::move(seg));
      return traj;
    }
    const Vec2 hit = snap_to_surface(sys.surface, res.y, eps);
    seg.samples.back().state = hit;
    traj.segments.push_back(std::move(seg));
    traj.events.push_back({res.t, hit, EventKind::Impact});
    if (impacts > 0) check_chatter(res.t, t_last_impact);
    t_last_impact = res.t;
    ++impacts;
    state = sys.reset(eps);
    t = res.t + kEventGuard;
  }
  return traj;
}

namespace {

enum class FilippovPhase { FreeMinus, FreePlus, Sliding, Done };

FilippovPhase classify_surface_state(const FilippovSystem& sys, Vec2 s, double eps) {
  const Vec2 grad = sys.surface.grad(s, eps);
  const double gm = dot(grad, sys.field_minus.eval(s));
  const double gp = dot(grad, sys.field_plus.eval(s));
  if (gm > kTangentTol && gp < -kTangentTol) return FilippovPhase::Sliding;
  if (gm < -kTangentTol) return FilippovPhase::FreeMinus;
  if (gm > kTangentTol && gp > kTangentTol) return FilippovPhase::FreePlus;
  if (std::fabs(gm) <= kTangentTol) {
    // Tangent minus field: the curvature of t -> h decides the side.
    const double curv = h_second_derivative(sys.surface, sys.field_minus, s, eps);
    if (curv < 0.0) return FilippovPhase::FreeMinus;
    return gp < -kTangentTol ? FilippovPhase::Sliding : FilippovPhase::FreePlus;
  }
  // gm < 0, gp > 0: repulsive point; continue with the minus field.
  return FilippovPhase::FreeMinus;
}

}  // namespace

Trajectory simulate_filippov(const FilippovSystem& sys, Vec2 s0, double eps, double t_max,
                             const IntegratorOptions& opts) {
  Trajectory traj;
  double t = 0.0;
  Vec2 state = s0;
  double t_last_event = -1.0;
  int events = 0;

  FilippovPhase phase;
  const double h0 = sys.surface.h(s0, eps);
  if (h0 < -arm_level(opts)) {
    phase = FilippovPhase::FreeMinus;
  } else if (h0 > arm_level(opts)) {
    phase = FilippovPhase::FreePlus;
  } else {
    state = snap_to_surface(sys.surface, state, eps);
    phase = classify_surface_state(sys, state, eps);
  }

  while (t < t_max && phase != FilippovPhase::Done && events < opts.max_events) {
    switch (phase) {
      case FilippovPhase::FreeMinus:
      case FilippovPhase::FreePlus: {
        const bool minus = phase == FilippovPhase::FreeMinus;
        const VectorField2& field = minus ? sys.field_minus : sys.field_plus;
        const Rhs rhs = [&field](Vec2 y) { return field.eval(y); };
        const double sign = minus ? 1.0 : -1.0;
        TrajectorySegment seg{minus ? SegmentMode::FreeMinus : SegmentMode::FreePlus, {}};
        ScalarEvent hit{[&sys, eps, sign](Vec2 y) { return sign * sys.surface.h(y, eps); },
                        /*rising_only=*/true, arm_level(opts), false};
        const PhaseResult res = run_phase(rhs, {hit}, t, state, t_max, opts, seg.samples);
        if (res.event_index < 0) {
          traj.segments.push_back(std::move(seg));
          phase = FilippovPhase::Done;
          break;
        }
        const Vec2 contact = snap_to_surface(sys.surface, res.y, eps);
        seg.samples.back().state = contact;
        traj.segments.push_back(std::move(seg));
        if (events > 0) check_chatter(res.t, t_last_event);
        t_last_event = res.t;
        ++events;
        const Vec2 grad = sys.surface.grad(contact, eps);
        const double g_other = minus ? dot(grad, sys.field_plus.eval(contact))
                                     : dot(grad, sys.field_minus.eval(contact));
        const bool slides = minus ? g_other < kTangentTol : g_other > -kTangentTol;
        if (slides) {
          traj.events.push_back({res.t, contact, EventKind::SlidingEntry});
          phase = FilippovPhase::Sliding;
        } else {
          traj.events.push_back({res.t, contact, EventKind::Crossing});
          phase = minus ? FilippovPhase::FreePlus : FilippovPhase::FreeMinus;
        }
        state = contact;
        t = res.t + kEventGuard;
        break;
      }
      case FilippovPhase::Sliding: {
        const Rhs rhs = [&sys, eps](Vec2 y) {
          return filippov_sliding_field(sys, y, eps).velocity;
        };
        auto alpha_of = [&sys, eps](Vec2 y) {
          const Vec2 grad = sys.surface.grad(y, eps);
          const double gm = dot(grad, sys.field_minus.eval(y));
          const double gp = dot(grad, sys.field_plus.eval(y));
          return gm / (gm - gp);
        };
        TrajectorySegment seg{SegmentMode::Sliding, {}};
        ScalarEvent exit_minus{[alpha_of](Vec2 y) { return alpha_of(y); }, false, 0.0, true};
        ScalarEvent exit_plus{[alpha_of](Vec2 y) { return 1.0 - alpha_of(y); }, false, 0.0,
                              true};
        const PhaseResult res =
            run_phase(rhs, {exit_minus, exit_plus}, t, state, t_max, opts, seg.samples);
        if (res.event_index < 0) {
          traj.segments.push_back(std::move(seg));
          phase = FilippovPhase::Done;
          break;
        }
        const Vec2 exit_point = snap_to_surface(sys.surface, res.y, eps);
        seg.samples.back().state = exit_point;
        traj.segments.push_back(std::move(seg));
        traj.events.push_back({res.t, exit_point, EventKind::SlidingExit});
        if (events > 0) check_chatter(res.t, t_last_event);
        t_last_event = res.t;
        ++events;
        phase = res.event_index == 0 ? FilippovPhase::FreeMinus : FilippovPhase::FreePlus;
        state = exit_point;
        t = res.t + kEventGuard;
        break;
      }
      case FilippovPhase::Done:
        break;
    }
  }
  return traj;
}

Trajectory simulate_sweeping(const SweepingProcess& proc, Vec2 s0, double eps, double t_max,
                             const IntegratorOptions& opts) {
  if (proc.surface.h(s0, eps) > 10.0 * opts.event_tolerance) {
    throw DomainError("simulate_sweeping requires h(s0) <= 0");
  }
  Trajectory traj;
  const Rhs interior_rhs = [&proc](Vec2 y) { return proc.field.eval(y); };
  double t = 0.0;
  Vec2 state = s0;
  double t_last_event = -1.0;
  int events = 0;

  bool on_boundary = false;
  if (std::fabs(proc.surface.h(s0, eps)) <= arm_level(opts)) {
    state = snap_to_surface(proc.surface, s0, eps);
    const double n = dot(proc.surface.grad(state, eps), proc.field.eval(state));
    on_boundary = n > kHysteresis;
  }

  while (t < t_max && events < opts.max_events) {
    if (!on_boundary) {
      TrajectorySegment seg{SegmentMode::FreeMinus, {}};
      ScalarEvent contact{[&proc, eps](Vec2 y) { return proc.surface.h(y, eps); },
                          /*rising_only=*/true, arm_level(opts), false};
      const PhaseResult res = run_phase(interior_rhs, {contact}, t, state, t_max, opts,
                                        seg.samples);
      if (res.event_index < 0) {
        traj.segments.push_back(std::move(seg));
        return traj;
      }
      const Vec2 hit = snap_to_surface(proc.surface, res.y, eps);
      seg.samples.back().state = hit;
      traj.segments.push_back(std::move(seg));
      traj.events.push_back({res.t, hit, EventKind::ConstraintContact});
      if (events > 0) check_chatter(res.t, t_last_event);
      t_last_event = res.t;
      ++events;
      state = hit;
      t = res.t + kEventGuard;
      on_boundary = true;
    } else {
      const Rhs rhs = [&proc, eps](Vec2 y) { return sweeping_sliding_field(proc, y, eps); };
      TrajectorySegment seg{SegmentMode::SweptBoundary, {}};
      // Release when the outward normal component drops below -hysteresis.
      ScalarEvent release{[&proc, eps](Vec2 y) {
                            return -(dot(proc.surface.grad(y, eps), proc.field.eval(y)) +
                                     kHysteresis);
                          },
                          /*rising_only=*/true, 0.0, true};
      const PhaseResult res = run_phase(rhs, {release}, t, state, t_max, opts, seg.samples);
      if (res.event_index < 0) {
        traj.segments.push_back(std::move(seg));
        return traj;
      }
      const Vec2 exit_point = snap_to_surface(proc.surface, res.y, eps);
      seg.samples.back().state = exit_point;
      traj.segments.push_back(std::move(seg));
      traj.events.push_back({res.t, exit_point, EventKind::SlidingExit});
      if (events > 0) check_chatter(res.t, t_last_event);
      t_last_event = res.t;
      ++events;
      state = exit_point;
      t = res.t + kEventGuard;
      on_boundary = false;
    }
  }
  return traj;
}

std::vector<TrajectorySample> simulate_sweeping_catchup(const SweepingProcess& proc, Vec2 s0,
                                                        double eps, double t_max, double step) {
  std::vector<TrajectorySample> out;
  const std::size_t n = static_cast<std::size_t>(std::ceil(t_max / step));
  out.reserve(n + 1);
  Vec2 state = project_onto_constraint(proc.surface, s0, eps);
  out.push_back({0.0, state});
  for (std::size_t i = 1; i <= n; ++i) {
    const double t = std::min(t_max, static_cast<double>(i) * step);
    const double h = t - out.back().t;
    state = sweeping_step(proc, state, h, eps);
    out.push_back({t, state});
  }
  return out;
}

}  // namespace psds
