#include "psds/engine.hpp"

#include <algorithm>
#include <cmath>

#include "psds/event.hpp"
#include "psds/rotate.hpp"

namespace psds {

namespace {

constexpr double kMargin = 1e-9;        // strictness margin for open conditions
constexpr double kDegenerateTol = 1e-12;

double rotation_rate(const Mat2& jac) {
  const double disc = jac.eigen_discriminant();
  if (disc < 0.0) return 0.5 * std::sqrt(-disc);
  return std::max(jac.max_abs(), 1e-6);
}

double arm_level(const IntegratorOptions& opts) {
  return std::max(10.0 * opts.event_tolerance, 1e-10);
}

struct Flight {
  double time = 0.0;
  Vec2 landing;
  DenseSolution path;
};

/// Integrates the free flow chunk by chunk until the first (armed, rising)
/// return to the surface. Chunking keeps an expanding focus from overflowing
/// before the scan sees the crossing.
Flight free_flight(const VectorField2& field, const SwitchingSurface& surf, double eps,
                   Vec2 start, double chunk, int max_chunks, const IntegratorOptions& opts) {
  const Rhs rhs = [&field](Vec2 y) { return field.eval(y); };
  const double arm = arm_level(opts);
  const auto g = [&surf, eps](double, Vec2 s) { return surf.h(s, eps); };

  IntegratorOptions integ = opts;
  integ.max_step = opts.max_step > 0.0 ? opts.max_step : chunk / 64.0;

  DenseSolution full;
  full.set_begin(0.0, start);
  double t = 0.0;
  Vec2 y = start;
  bool armed = surf.h(start, eps) <= -arm;
  for (int i = 0; i < max_chunks; ++i) {
    DenseSolution sol = integrate_smooth(rhs, y, {t, t + chunk}, integ);
    EventScanOptions scan;
    scan.rising_only = true;
    scan.arm_threshold = armed ? 0.0 : arm;
    const auto te = find_scalar_event(sol, g, opts.event_tolerance, scan);
    for (const DenseStep& st : sol.steps()) {
      full.push(st);
      if (!armed && surf.h(st.y1, eps) <= -arm) armed = true;
    }
    if (te) {
      const Vec2 landing = snap_to_surface(surf, sol.eval(*te), eps);
      full.truncate(*te, landing);
      return {*te, landing, std::move(full)};
    }
    t = sol.t_end();
    y = sol.end_state();
  }
  throw NoReturn("flow did not return to the surface within the search horizon");
}

Vec2 distinguished_start(const SystemSpec& spec, double eps) {
  if (const auto* imp = std::get_if<ImpactingSystem>(&spec)) return imp->reset(eps);
  return solve_tangency(minus_field(spec), surface_of(spec), eps).point;
}

TrajectorySegment segment_from_path(const DenseSolution& path, SegmentMode mode) {
  TrajectorySegment seg{mode, {}};
  seg.samples.push_back({path.t_begin(), path.begin_state()});
  for (const DenseStep& st : path.steps()) seg.samples.push_back({st.t1(), st.y1});
  return seg;
}

// ---------------------------------------------------------------------------
// Hypothesis bookkeeping. Failed structural degeneracies (the implicit
// function theorem cannot even set up) force an inconclusive verdict; failed
// strict conditions mean the theorem makes no prediction; values inside the
// strictness margin of an open condition are borderline -> inconclusive.
// ---------------------------------------------------------------------------

enum class FailClass { Predictive, Structural };

struct CheckSet {
  std::vector<HypothesisCheck> checks;
  bool any_structural_fail = false;
  bool any_fail = false;
  bool any_borderline = false;

  void add(const std::string& name, bool passed, double value, FailClass cls,
           bool borderline = false) {
    checks.push_back({name, passed, borderline, value});
    if (borderline) {
      any_borderline = true;
    } else if (!passed) {
      any_fail = true;
      if (cls == FailClass::Structural) any_structural_fail = true;
    }
  }

  /// Strict inequality value < 0 with the margin treatment.
  void add_negative(const std::string& name, double value, FailClass cls) {
    if (std::fabs(value) <= kMargin) {
      add(name, false, value, cls, /*borderline=*/true);
    } else {
      add(name, value < 0.0, value, cls);
    }
  }

  /// value != 0 with a hard margin (no borderline band).
  void add_nonzero(const std::string& name, double value, FailClass cls,
                   double tol = kMargin) {
    add(name, std::fabs(value) > tol, value, cls);
  }

  Verdict verdict() const {
    if (any_structural_fail || any_borderline) return Verdict::Inconclusive;
    if (any_fail) return Verdict::NotPredicted;
    return Verdict::CyclePredicted;
  }
};

bool add_setup_check(CheckSet& set, const SystemSpec& spec) {
  const ValidationReport validation = validate_setup(spec);
  int failures = 0;
  for (const auto& c : validation.checks) {
    if (!c.passed) ++failures;
  }
  set.add("setup_valid", failures == 0, static_cast<double>(failures),
          FailClass::Structural);
  return failures == 0;
}

/// Tries the reduced cycle; on NoReturn / WrongImpactCount records a failed
/// existence check.
std::optional<ReducedCycle> add_cycle_check(CheckSet& set, const ReducedHybridSystem& red) {
  try {
    ReducedCycle cycle = reduced_cycle(red);
    set.add("reduced_cycle_exists", true, 1.0, FailClass::Predictive);
    return cycle;
  } catch (const NoReturn&) {
    set.add("reduced_cycle_exists", false, 0.0, FailClass::Predictive);
  } catch (const WrongImpactCount&) {
    set.add("reduced_cycle_exists", false, 0.0, FailClass::Predictive);
  }
  return std::nullopt;
}

/// The (segment) condition: landing between the pseudo-equilibrium and reset
/// levels when lambda'(0) < 0, landing != reset level when lambda'(0) > 0.
void add_segment_check(CheckSet& set, double landing_u, double reset_u, double a_prime,
                       double lambda_prime) {
  if (lambda_prime < 0.0) {
    const double lo = std::min(a_prime, reset_u);
    const double hi = std::max(a_prime, reset_u);
    const double depth = std::min(landing_u - lo, hi - landing_u);
    if (std::fabs(depth) <= kMargin) {
      set.add("segment", false, depth, FailClass::Predictive, /*borderline=*/true);
    } else {
      set.add("segment", depth > 0.0, depth, FailClass::Predictive);
    }
  } else {
    const double gap = landing_u - reset_u;
    if (std::fabs(gap) <= kMargin) {
      set.add("segment", false, gap, FailClass::Predictive, /*borderline=*/true);
    } else {
      set.add("segment", true, gap, FailClass::Predictive);
    }
  }
}

}  // namespace

std::pair<double, Vec2> return_time_map(const SystemSpec& spec, double eps,
                                        const IntegratorOptions& opts) {
  const VectorField2& field = minus_field(spec);
  const SwitchingSurface& surf = surface_of(spec);
  const Vec2 start = distinguished_start(spec, eps);
  const double chunk = 2.0 * M_PI / rotation_rate(field.jacobian({0.0, 0.0}));
  const Flight flight = free_flight(field, surf, eps, start, chunk, 100, opts);
  return {flight.time, flight.landing};
}

double transversality(const SystemSpec& spec, double eps, Vec2 landing) {
  return dot(surface_of(spec).grad(landing, eps), minus_field(spec).eval(landing));
}

BifurcationReport check_impacting(const ImpactingSystem& sys) {
  BifurcationReport report;
  report.system_class = SystemClass::Impacting;
  CheckSet set;
  const SystemSpec spec{sys};
  if (!add_setup_check(set, spec)) {
    report.checks = set.checks;
    report.verdict = Verdict::Inconclusive;
    return report;
  }

  report.reduced = build_reduced(spec);
  const Vec2 reset_slope = reset_derivative_at_zero(sys);
  report.tangency_slope = reset_slope;

  const double h_eps = sys.surface.d_eps({0.0, 0.0}, 0.0);
  const Vec2 grad0 = sys.surface.grad({0.0, 0.0}, 0.0);
  set.add_nonzero("H_eps_nonzero", h_eps, FailClass::Predictive);

  // Does the reset curve satisfy the tangency property (the minus field is
  // tangent to the surface at the reset point)? That decides which form of
  // the one-impact-per-period condition applies.
  double as1rem_residual = 0.0;
  for (double eps = 1e-1; eps >= 0.999e-4; eps *= 0.1) {
    const Vec2 p = sys.reset(eps);
    as1rem_residual = std::max(
        as1rem_residual, std::fabs(dot(sys.surface.grad(p, eps), sys.field.eval(p))) / eps);
  }
  const bool as1rem_holds = as1rem_residual <= 1e-6;
  report.diagnostics["as1rem_residual"] = as1rem_residual;

  const auto cycle = add_cycle_check(set, report.reduced);
  if (cycle) {
    report.cycle = cycle;
    const Mat2 jac = report.reduced.jacobian;
    if (as1rem_holds) {
      set.add_nonzero("as2rem", cycle->landing_u - reset_slope.x, FailClass::Predictive);
    } else {
      const double value =
          jac.a10 * cycle->landing_u - jac.a11 * h_eps / grad0.y;
      set.add_nonzero("as2rev", value, FailClass::Predictive);
    }
    report.diagnostics["F_t_T0"] =
        grad0.y * (jac.a10 * cycle->landing_u + jac.a11 * report.reduced.line_level);
  }

  report.checks = set.checks;
  report.verdict = set.verdict();
  return report;
}

BifurcationReport check_filippov(const FilippovSystem& sys) {
  BifurcationReport report;
  report.system_class = SystemClass::Filippov;
  CheckSet set;
  const SystemSpec spec{sys};
  if (!add_setup_check(set, spec)) {
    report.checks = set.checks;
    report.verdict = Verdict::Inconclusive;
    return report;
  }

  const Vec2 grad0 = sys.surface.grad({0.0, 0.0}, 0.0);
  const double h_eps = sys.surface.d_eps({0.0, 0.0}, 0.0);
  const Vec2 fplus0 = sys.field_plus.eval({0.0, 0.0});
  const Mat2 jm = sys.field_minus.jacobian({0.0, 0.0});

  set.add_nonzero("H_eps_nonzero", h_eps, FailClass::Predictive);
  set.add_negative("aspro_transversal_plus", grad0.y * fplus0.y, FailClass::Predictive);
  set.add_nonzero("aspro_gx_nonzero", jm.a10, FailClass::Structural, kDegenerateTol);
  const double excludes = jm.a00 * fplus0.y - jm.a10 * fplus0.x;
  set.add_nonzero("excludes", excludes, FailClass::Structural, kDegenerateTol);

  if (set.any_structural_fail) {
    report.checks = set.checks;
    report.verdict = Verdict::Inconclusive;
    return report;
  }

  report.reduced = build_reduced(spec);
  const Vec2 tangency_slope = tangency_derivative(sys.field_minus, sys.surface);
  const Vec3 eq_slope = filippov_pseudo_equilibrium_derivative(sys);
  report.tangency_slope = tangency_slope;
  report.equilibrium_slope = eq_slope;

  set.add_negative("newas", check_outward_condition(sys), FailClass::Predictive);

  const auto cycle = add_cycle_check(set, report.reduced);
  if (cycle) {
    report.cycle = cycle;
    add_segment_check(set, cycle->landing_u, tangency_slope.x, eq_slope.a, eq_slope.c);
  }

  report.checks = set.checks;
  report.verdict = set.verdict();
  return report;
}

BifurcationReport check_sweeping(const SweepingProcess& proc) {
  BifurcationReport report;
  report.system_class = SystemClass::Sweeping;
  CheckSet set;
  const SystemSpec spec{proc};
  if (!add_setup_check(set, spec)) {
    report.checks = set.checks;
    report.verdict = Verdict::Inconclusive;
    return report;
  }

  const double h_eps = proc.surface.d_eps({0.0, 0.0}, 0.0);
  const Mat2 jac = proc.field.jacobian({0.0, 0.0});

  set.add_nonzero("H_eps_nonzero", h_eps, FailClass::Predictive);
  set.add_nonzero("excludesp_fx_nonzero", jac.a00, FailClass::Structural, kDegenerateTol);
  set.add_nonzero("excludesp_gx_nonzero", jac.a10, FailClass::Structural, kDegenerateTol);

  if (set.any_structural_fail) {
    report.checks = set.checks;
    report.verdict = Verdict::Inconclusive;
    return report;
  }

  report.reduced = build_reduced(spec);
  const Vec2 tangency_slope = tangency_derivative(proc.field, proc.surface);
  const Vec3 eq_slope = sweeping_boundary_equilibrium_derivative(proc);
  report.tangency_slope = tangency_slope;
  report.equilibrium_slope = eq_slope;

  set.add_negative("newas", check_outward_condition(proc), FailClass::Predictive);

  const auto cycle = add_cycle_check(set, report.reduced);
  if (cycle) {
    report.cycle = cycle;
    add_segment_check(set, cycle->landing_u, tangency_slope.x, eq_slope.a, eq_slope.c);
  }

  report.checks = set.checks;
  report.verdict = set.verdict();
  return report;
}

BifurcationReport check_system(const SystemSpec& spec) {
  return std::visit(
      [](const auto& sys) -> BifurcationReport {
        using T = std::decay_t<decltype(sys)>;
        if constexpr (std::is_same_v<T, ImpactingSystem>) {
          return check_impacting(sys);
        } else if constexpr (std::is_same_v<T, FilippovSystem>) {
          return check_filippov(sys);
        } else {
          return check_sweeping(sys);
        }
      },
      spec);
}

namespace {

/// Shifts a simulated sliding pass onto the tail of the flight record.
void append_shifted(Trajectory& out, const Trajectory& slide, double t_shift) {
  for (const auto& seg : slide.segments) {
    TrajectorySegment shifted{seg.mode, {}};
    for (const auto& s : seg.samples) {
      if (!out.segments.empty() && !out.segments.back().samples.empty() &&
          s.t + t_shift <= out.segments.back().samples.back().t && shifted.samples.empty()) {
        continue;  // drop the duplicated handoff sample
      }
      shifted.samples.push_back({s.t + t_shift, s.state});
    }
    if (!shifted.samples.empty()) out.segments.push_back(std::move(shifted));
  }
  for (const auto& e : slide.events) {
    out.events.push_back({e.time + t_shift, e.state, e.kind});
  }
}

ConfirmationRecord confirm_impacting(const ImpactingSystem& sys, double eps,
                                     const IntegratorOptions& opts) {
  const SystemSpec spec{sys};
  ConfirmationRecord rec;
  rec.epsilon = eps;
  const Vec2 start = sys.reset(eps);
  const double chunk = 2.0 * M_PI / rotation_rate(sys.field.jacobian({0.0, 0.0}));
  const Flight flight = free_flight(sys.field, sys.surface, eps, start, chunk, 100, opts);
  const double phi = transversality(spec, eps, flight.landing);
  if (std::fabs(phi) <= 1e-12 * std::max(1.0, eps)) {
    throw ConfirmationFailed("grazing landing: transversality indicator vanishes");
  }
  rec.flight_time = flight.time;
  rec.period = flight.time;
  rec.landing = flight.landing;
  rec.closure_error = (sys.reset(eps) - start).norm();
  rec.trajectory.segments.push_back(segment_from_path(flight.path, SegmentMode::FreeMinus));
  rec.trajectory.events.push_back({flight.time, flight.landing, EventKind::Impact});
  return rec;
}

ConfirmationRecord confirm_with_sliding(const SystemSpec& spec, double eps,
                                        const IntegratorOptions& opts) {
  const VectorField2& field = minus_field(spec);
  const SwitchingSurface& surf = surface_of(spec);
  const bool is_filippov = std::holds_alternative<FilippovSystem>(spec);

  const TangencyPoint tangency = solve_tangency(field, surf, eps);
  const PseudoEquilibrium pseudo =
      is_filippov
          ? solve_filippov_pseudo_equilibrium(std::get<FilippovSystem>(spec), eps)
          : solve_sweeping_boundary_equilibrium(std::get<SweepingProcess>(spec), eps);
  const double lambda_prime = pseudo.derivative_at_zero.c;

  ConfirmationRecord rec;
  rec.epsilon = eps;
  const double chunk = 2.0 * M_PI / rotation_rate(field.jacobian({0.0, 0.0}));
  const Flight flight = free_flight(field, surf, eps, tangency.point, chunk, 100, opts);
  rec.flight_time = flight.time;
  rec.landing = flight.landing;

  const BoundaryClassification landing_class = classify_point(field, surf, flight.landing, eps);
  if (landing_class.kind != BoundaryKind::Sliding) {
    throw ConfirmationFailed("landing is not in the sliding region");
  }
  if (lambda_prime < 0.0) {
    // Landing must fall strictly between the tangency point and the
    // pseudo-equilibrium along the surface.
    const Vec2 grad = surf.grad(tangency.point, eps);
    const Vec2 tangent = Vec2{-grad.y, grad.x} / grad.norm();
    const double tau_land = dot(flight.landing - tangency.point, tangent);
    const double tau_eq = dot(pseudo.point - tangency.point, tangent);
    const double margin = 1e-9 * std::max(1.0, std::fabs(tau_eq));
    const bool inside = tau_eq > 0.0 ? (tau_land > margin && tau_land < tau_eq - margin)
                                     : (tau_land < -margin && tau_land > tau_eq + margin);
    if (!inside) {
      throw ConfirmationFailed(
          "landing is outside the (pseudo-equilibrium, tangency) sliding segment");
    }
  }

  IntegratorOptions slide_opts = opts;
  slide_opts.max_events = 1;
  const double slide_horizon = 100.0 * chunk;
  const Trajectory slide =
      is_filippov
          ? simulate_filippov(std::get<FilippovSystem>(spec), flight.landing, eps,
                              slide_horizon, slide_opts)
          : simulate_sweeping(std::get<SweepingProcess>(spec), flight.landing, eps,
                              slide_horizon, slide_opts);
  if (slide.events.empty() || slide.events.back().kind != EventKind::SlidingExit) {
    throw ConfirmationFailed("sliding phase did not exit through the tangency point");
  }
  const Event exit = slide.events.back();
  rec.period = flight.time + exit.time;
  rec.closure_error = (exit.state - tangency.point).norm();

  rec.trajectory.segments.push_back(segment_from_path(flight.path, SegmentMode::FreeMinus));
  rec.trajectory.events.push_back({flight.time, flight.landing,
                                   is_filippov ? EventKind::SlidingEntry
                                               : EventKind::ConstraintContact});
  append_shifted(rec.trajectory, slide, flight.time);
  return rec;
}

}  // namespace

ConfirmationRecord confirm_cycle(const SystemSpec& spec, double eps,
                                 const IntegratorOptions& opts) {
  if (eps <= 0.0) throw DomainError("confirm_cycle requires eps > 0");
  if (const auto* imp = std::get_if<ImpactingSystem>(&spec)) {
    return confirm_impacting(*imp, eps, opts);
  }
  return confirm_with_sliding(spec, eps, opts);
}

std::vector<ConvergenceRow> convergence_study(const SystemSpec& spec,
                                              const std::vector<double>& eps_list,
                                              const IntegratorOptions& opts) {
  const ReducedCycle reduced = reduced_cycle(build_reduced(spec));
  std::vector<ConvergenceRow> rows;
  for (double eps : eps_list) {
    if (eps <= 0.0) continue;  // the eps = 0 row is degenerate
    const ConfirmationRecord rec = confirm_cycle(spec, eps, opts);
    double amplitude = 0.0;
    for (const auto& seg : rec.trajectory.segments) {
      for (const auto& s : seg.samples) amplitude = std::max(amplitude, s.state.norm());
    }
    rows.push_back({eps, amplitude, rec.period, rec.flight_time - reduced.period});
  }
  return rows;
}

}  // namespace psds
