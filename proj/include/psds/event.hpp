#pragma once

#include <optional>
#include <string>

#include "psds/integrate.hpp"
#include "psds/surface.hpp"

namespace psds {

enum class EventKind { Impact, SlidingEntry, SlidingExit, Crossing, ConstraintContact };

const char* to_string(EventKind k);

struct Event {
  double time = 0.0;
  Vec2 state;
  EventKind kind = EventKind::Crossing;
};

/// Controls the sign-change scan over a dense segment.
struct EventScanOptions {
  /// Accept only crossings from negative to positive (surface returns).
  bool rising_only = false;
  /// When positive, a rising crossing counts only after the function has
  /// first dipped below -arm_threshold. This suppresses spurious re-detection
  /// right after tangential departures, where |g| sits at noise level.
  double arm_threshold = 0.0;
  /// Scan starts here (events at or before it are ignored).
  double t_from = -1e300;
  int subdivisions = 8;
};

/// Earliest zero of a scalar function along a dense segment: per-step
/// subdivided sign scan, then Brent refinement of the bracket down to
/// `x_tol` in time. Returns nullopt when no sign change occurs.
std::optional<double> find_scalar_event(const DenseSolution& seg,
                                        const std::function<double(double, Vec2)>& g,
                                        double x_tol, const EventScanOptions& scan = {});

/// Earliest surface crossing h(state(t), eps) = 0 on the segment, refined to
/// event_tolerance and snapped onto the surface along its gradient.
std::optional<Event> locate_event(const DenseSolution& seg, const SwitchingSurface& surface,
                                  double eps, const IntegratorOptions& opts = {},
                                  EventKind kind = EventKind::Crossing,
                                  const EventScanOptions& scan = {});

/// Newton projection of a near-surface state exactly onto {h = 0} along the
/// gradient direction.
Vec2 snap_to_surface(const SwitchingSurface& surface, Vec2 s, double eps,
                     double tol = 1e-14, int max_iter = 8);

}  // namespace psds
