#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "psds/event.hpp"

namespace psds {

enum class SegmentMode { FreeMinus, FreePlus, Sliding, SweptBoundary };

const char* to_string(SegmentMode m);

struct TrajectorySample {
  double t = 0.0;
  Vec2 state;
};

struct TrajectorySegment {
  SegmentMode mode = SegmentMode::FreeMinus;
  std::vector<TrajectorySample> samples;
};

/// Piecewise record of one hybrid run: per-mode sample trains plus the event
/// log. Immutable once returned by a simulator.
struct Trajectory {
  std::vector<TrajectorySegment> segments;
  std::vector<Event> events;

  double t_end() const {
    if (segments.empty() || segments.back().samples.empty()) return 0.0;
    return segments.back().samples.back().t;
  }
  Vec2 final_state() const {
    if (segments.empty() || segments.back().samples.empty()) return {};
    return segments.back().samples.back().state;
  }
  std::size_t event_count(EventKind kind) const {
    std::size_t n = 0;
    for (const auto& e : events) {
      if (e.kind == kind) ++n;
    }
    return n;
  }
  /// Largest h over all recorded samples (sweeping feasibility diagnostic).
  double max_h(const SwitchingSurface& surface, double eps) const;
  /// Linear interpolation between recorded samples across all segments.
  Vec2 interpolate(double t) const;
};

/// Columns t,x,y,mode,event_kind; '.' decimal separator, one row per sample.
void write_csv(const Trajectory& traj, std::ostream& os);
std::string to_csv(const Trajectory& traj);

}  // namespace psds
